#pragma once

#include "triavg/oper.hpp"
#include "triavg/rat.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace triavg {

/// Bracketed word: a nonempty sequence of atoms, each a generator index or a
/// bracket enclosing another nonempty word.
class BracketedWord {
public:
    struct Atom;
    using AtomList = std::vector<Atom>;
    struct Atom {
        // generator index, or bracketed sub-word
        std::variant<int, AtomList> v;
    };

    BracketedWord() = default;
    explicit BracketedWord(AtomList atoms) : atoms_(std::move(atoms)) {}

    const AtomList& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    int generator_count() const;
    int depth() const;

    /// three-way structural comparison (generators before brackets)
    static int compare(const AtomList& a, const AtomList& b);
    friend bool operator==(const BracketedWord& a, const BracketedWord& b) {
        return compare(a.atoms_, b.atoms_) == 0;
    }
    friend bool operator!=(const BracketedWord& a, const BracketedWord& b) { return !(a == b); }
    friend bool operator<(const BracketedWord& a, const BracketedWord& b) {
        return compare(a.atoms_, b.atoms_) < 0;
    }

    /// Grammar: generators are identifiers, juxtaposition separated by
    /// spaces, `[ w ]` is the bracket. Round trips through parse().
    std::string str(const std::vector<std::string>& alphabet) const;

private:
    AtomList atoms_;
};

struct ParseError {
    std::size_t position;
    std::string message;
};

/// Parses against a declared alphabet; throws std::invalid_argument with the
/// offending position in the message.
BracketedWord parse_word(const std::string& s, const std::vector<std::string>& alphabet);

/// Finite rational combination of bracketed words.
class WordPoly {
public:
    WordPoly() = default;
    static WordPoly of(const BracketedWord& w, const Rat& c = Rat(1));

    const std::map<BracketedWord, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    void add(const BracketedWord& w, const Rat& c);
    WordPoly& operator+=(const WordPoly& o);
    friend bool operator==(const WordPoly& a, const WordPoly& b) { return a.t_ == b.t_; }

private:
    std::map<BracketedWord, Rat> t_;
};

/// One rewrite applied at the leftmost-innermost redex of each monomial:
/// [u][v] -> l [uv], [[u] v] -> l [uv], [u [v]] -> l [uv].
struct RewriteStep {
    WordPoly poly;
    bool changed = false;
    std::string rule;  // which rule fired first, for traces
};

RewriteStep rewrite_step(const WordPoly& p, const Rat& lambda);

/// Iterates rewrite_step to the fixed point; the bracket count strictly
/// decreases, so at most total-bracket-count steps occur per monomial.
WordPoly normal_form(const WordPoly& p, const Rat& lambda, int step_bound = 10000);

bool is_irreducible(const BracketedWord& w);

/// All maximal rewrite sequences over every redex choice reach one result;
/// returns false (with the offending pair in `witness`) when they do not.
bool confluence_check(const BracketedWord& w, const Rat& lambda, std::string* witness = nullptr);

/// Evaluation of a word in a verified averaging algebra: generators via
/// `images`, concatenation via the product, brackets via P.
RatVector evaluate_word(const BracketedWord& w, const AssocSpec& a, const LinearOp& p,
                        const std::vector<RatVector>& images);
RatVector evaluate_poly(const WordPoly& w, const AssocSpec& a, const LinearOp& p,
                        const std::vector<RatVector>& images);

/// All irreducible words with generator_count <= max_len and depth <=
/// max_depth over an alphabet of the given size, in canonical order.
std::vector<BracketedWord> enumerate_words(int alphabet_size, int max_len, int max_depth);

/// Every bracketed word (reducible or not) within the bounds; the carrier of
/// the termination and confluence sweeps.
std::vector<BracketedWord> all_bounded_words(int alphabet_size, int max_len, int max_depth);

} // namespace triavg

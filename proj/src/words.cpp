#include "triavg/words.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace triavg {

int BracketedWord::compare(const AtomList& a, const AtomList& b) {
    auto atom_cmp = [](auto&& self, const Atom& x, const Atom& y) -> int {
        bool xb = std::holds_alternative<AtomList>(x.v);
        bool yb = std::holds_alternative<AtomList>(y.v);
        if (xb != yb) return xb ? 1 : -1;
        if (!xb) {
            int xi = std::get<int>(x.v), yi = std::get<int>(y.v);
            return xi < yi ? -1 : xi > yi ? 1 : 0;
        }
        const AtomList& xs = std::get<AtomList>(x.v);
        const AtomList& ys = std::get<AtomList>(y.v);
        for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
            int c = self(self, xs[i], ys[i]);
            if (c != 0) return c;
        }
        return xs.size() < ys.size() ? -1 : xs.size() > ys.size() ? 1 : 0;
    };
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        int c = atom_cmp(atom_cmp, a[i], b[i]);
        if (c != 0) return c;
    }
    return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
}

int BracketedWord::generator_count() const {
    int n = 0;
    auto rec = [&](auto&& self, const AtomList& atoms) -> void {
        for (const Atom& a : atoms) {
            if (std::holds_alternative<int>(a.v))
                ++n;
            else
                self(self, std::get<AtomList>(a.v));
        }
    };
    rec(rec, atoms_);
    return n;
}

int BracketedWord::depth() const {
    auto rec = [&](auto&& self, const AtomList& atoms) -> int {
        int d = 0;
        for (const Atom& a : atoms)
            if (std::holds_alternative<AtomList>(a.v))
                d = std::max(d, 1 + self(self, std::get<AtomList>(a.v)));
        return d;
    };
    return rec(rec, atoms_);
}

std::string BracketedWord::str(const std::vector<std::string>& alphabet) const {
    std::string out;
    auto rec = [&](auto&& self, const AtomList& atoms) -> void {
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (i) out += ' ';
            if (std::holds_alternative<int>(atoms[i].v)) {
                out += alphabet.at(std::get<int>(atoms[i].v));
            } else {
                out += "[ ";
                self(self, std::get<AtomList>(atoms[i].v));
                out += " ]";
            }
        }
    };
    rec(rec, atoms_);
    return out;
}

namespace {

struct Token {
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == ' ' || s[i] == '\t') {
            ++i;
            continue;
        }
        if (s[i] == '[' || s[i] == ']') {
            out.push_back({std::string(1, s[i]), i});
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '[' && s[j] != ']') ++j;
        out.push_back({s.substr(i, j - i), i});
        i = j;
    }
    return out;
}

[[noreturn]] void parse_fail(std::size_t pos, const std::string& msg) {
    throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + msg);
}

} // namespace

BracketedWord parse_word(const std::string& s, const std::vector<std::string>& alphabet) {
    std::vector<Token> toks = tokenize(s);
    std::size_t i = 0;
    auto rec = [&](auto&& self, bool top) -> BracketedWord::AtomList {
        BracketedWord::AtomList atoms;
        while (i < toks.size()) {
            const Token& t = toks[i];
            if (t.text == "]") {
                if (top) parse_fail(t.pos, "unbalanced ']'");
                break;
            }
            if (t.text == "[") {
                std::size_t open = t.pos;
                ++i;
                BracketedWord::AtomList inner = self(self, false);
                if (i >= toks.size() || toks[i].text != "]") parse_fail(open, "unbalanced '['");
                if (inner.empty()) parse_fail(open, "empty bracket");
                ++i;
                atoms.push_back({std::move(inner)});
                continue;
            }
            auto it = std::find(alphabet.begin(), alphabet.end(), t.text);
            if (it == alphabet.end()) parse_fail(t.pos, "unknown generator '" + t.text + "'");
            atoms.push_back({int(it - alphabet.begin())});
            ++i;
        }
        return atoms;
    };
    BracketedWord::AtomList atoms = rec(rec, true);
    if (i < toks.size()) parse_fail(toks[i].pos, "trailing input");
    if (atoms.empty()) parse_fail(0, "empty word");
    return BracketedWord(std::move(atoms));
}

WordPoly WordPoly::of(const BracketedWord& w, const Rat& c) {
    WordPoly p;
    p.add(w, c);
    return p;
}

void WordPoly::add(const BracketedWord& w, const Rat& c) {
    if (c.is_zero()) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
        t_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

WordPoly& WordPoly::operator+=(const WordPoly& o) {
    for (const auto& [w, c] : o.t_) add(w, c);
    return *this;
}

namespace {

using AtomList = BracketedWord::AtomList;
using Atom = BracketedWord::Atom;

bool is_bracket(const Atom& a) { return std::holds_alternative<AtomList>(a.v); }
const AtomList& contents(const Atom& a) { return std::get<AtomList>(a.v); }

// One rewrite at the leftmost-innermost redex. Returns true and fills `out`
// (the rewritten list; the caller multiplies by lambda) when a redex fired.
// Rules: [u][v] -> l [uv] and the nested collapse [u [v] w] -> l [uvw]
// (u, w possibly empty; the printed head/tail rules are its special cases,
// and the middle case is forced on the system by its own critical pairs).
bool rewrite_once(const AtomList& atoms, AtomList& out, std::string& rule) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (is_bracket(atoms[i])) {
            const AtomList& c = contents(atoms[i]);
            AtomList inner_out;
            if (rewrite_once(c, inner_out, rule)) {
                out = atoms;
                out[i] = Atom{std::move(inner_out)};
                return true;
            }
            for (std::size_t j = 0; j < c.size(); ++j) {
                if (!is_bracket(c[j])) continue;
                AtomList merged(c.begin(), c.begin() + j);
                const AtomList& mid = contents(c[j]);
                merged.insert(merged.end(), mid.begin(), mid.end());
                merged.insert(merged.end(), c.begin() + j + 1, c.end());
                out = atoms;
                out[i] = Atom{std::move(merged)};
                rule = j == 0 ? "bracket-head" : j + 1 == c.size() ? "bracket-tail" : "bracket-mid";
                return true;
            }
        }
        if (i + 1 < atoms.size() && is_bracket(atoms[i]) && is_bracket(atoms[i + 1])) {
            // [u][v] -> l [u v]
            AtomList merged = contents(atoms[i]);
            const AtomList& second = contents(atoms[i + 1]);
            merged.insert(merged.end(), second.begin(), second.end());
            out.assign(atoms.begin(), atoms.begin() + i);
            out.push_back(Atom{std::move(merged)});
            out.insert(out.end(), atoms.begin() + i + 2, atoms.end());
            rule = "adjacent";
            return true;
        }
    }
    return false;
}

int bracket_count(const AtomList& atoms) {
    int n = 0;
    for (const Atom& a : atoms)
        if (is_bracket(a)) n += 1 + bracket_count(contents(a));
    return n;
}

// every redex position as a rewritten successor (for the confluence check)
void all_rewrites(const AtomList& atoms, std::vector<AtomList>& out) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (is_bracket(atoms[i])) {
            const AtomList& c = contents(atoms[i]);
            std::vector<AtomList> inner;
            all_rewrites(c, inner);
            for (auto& io : inner) {
                AtomList next = atoms;
                next[i] = Atom{std::move(io)};
                out.push_back(std::move(next));
            }
            for (std::size_t j = 0; j < c.size(); ++j) {
                if (!is_bracket(c[j])) continue;
                AtomList merged(c.begin(), c.begin() + j);
                const AtomList& mid = contents(c[j]);
                merged.insert(merged.end(), mid.begin(), mid.end());
                merged.insert(merged.end(), c.begin() + j + 1, c.end());
                AtomList next = atoms;
                next[i] = Atom{std::move(merged)};
                out.push_back(std::move(next));
            }
        }
        if (i + 1 < atoms.size() && is_bracket(atoms[i]) && is_bracket(atoms[i + 1])) {
            AtomList merged = contents(atoms[i]);
            const AtomList& second = contents(atoms[i + 1]);
            merged.insert(merged.end(), second.begin(), second.end());
            AtomList next(atoms.begin(), atoms.begin() + i);
            next.push_back(Atom{std::move(merged)});
            next.insert(next.end(), atoms.begin() + i + 2, atoms.end());
            out.push_back(std::move(next));
        }
    }
}

} // namespace

RewriteStep rewrite_step(const WordPoly& p, const Rat& lambda) {
    if (lambda.is_zero()) throw std::domain_error("rewrite_step: weight must be nonzero");
    RewriteStep out;
    for (const auto& [w, c] : p.terms()) {
        AtomList rewritten;
        std::string rule;
        if (rewrite_once(w.atoms(), rewritten, rule)) {
            out.poly.add(BracketedWord(std::move(rewritten)), c * lambda);
            out.changed = true;
            if (out.rule.empty()) out.rule = rule;
        } else {
            out.poly.add(w, c);
        }
    }
    return out;
}

WordPoly normal_form(const WordPoly& p, const Rat& lambda, int step_bound) {
    WordPoly cur = p;
    for (int step = 0; step < step_bound; ++step) {
        RewriteStep next = rewrite_step(cur, lambda);
        if (!next.changed) return cur;
        cur = std::move(next.poly);
    }
    throw std::runtime_error("normal_form: step bound exceeded");
}

bool is_irreducible(const BracketedWord& w) {
    AtomList dummy;
    std::string rule;
    return !rewrite_once(w.atoms(), dummy, rule);
}

bool confluence_check(const BracketedWord& w, const Rat& lambda, std::string* witness) {
    if (lambda.is_zero()) throw std::domain_error("confluence_check: weight must be nonzero");
    // Every rule removes exactly one bracket and multiplies by lambda, so the
    // lambda-power of any maximal sequence is fixed by the endpoint; the
    // system is confluent on w exactly when one endpoint is reachable.
    struct Less {
        bool operator()(const AtomList& a, const AtomList& b) const {
            return BracketedWord::compare(a, b) < 0;
        }
    };
    std::set<AtomList, Less> seen;
    std::set<AtomList, Less> endpoints;
    auto dfs = [&](auto&& self, const AtomList& atoms) -> void {
        std::vector<AtomList> succ;
        all_rewrites(atoms, succ);
        if (succ.empty()) {
            endpoints.insert(atoms);
            return;
        }
        for (auto& s : succ)
            if (seen.insert(s).second) self(self, s);
    };
    dfs(dfs, w.atoms());
    if (endpoints.size() <= 1) return true;
    if (witness) {
        std::vector<std::string> alphabet;
        for (int g = 0; g < 26; ++g) alphabet.push_back(std::string(1, char('a' + g)));
        auto it = endpoints.begin();
        *witness = BracketedWord(*it).str(alphabet);
        ++it;
        *witness += "  vs  " + BracketedWord(*it).str(alphabet);
    }
    return false;
}

RatVector evaluate_word(const BracketedWord& w, const AssocSpec& a, const LinearOp& p,
                        const std::vector<RatVector>& images) {
    auto rec = [&](auto&& self, const AtomList& atoms) -> RatVector {
        RatVector acc;
        bool first = true;
        for (const Atom& at : atoms) {
            RatVector v;
            if (is_bracket(at))
                v = p.apply(self(self, contents(at)));
            else
                v = images.at(std::get<int>(at.v));
            if (first) {
                acc = std::move(v);
                first = false;
            } else {
                acc = a.mu.apply(acc, v);
            }
        }
        return acc;
    };
    if (w.empty()) throw std::invalid_argument("evaluate_word: empty word");
    return rec(rec, w.atoms());
}

RatVector evaluate_poly(const WordPoly& w, const AssocSpec& a, const LinearOp& p,
                        const std::vector<RatVector>& images) {
    RatVector acc(a.dim);
    for (const auto& [word, c] : w.terms()) {
        RatVector v = evaluate_word(word, a, p, images);
        for (int i = 0; i < a.dim; ++i) acc[i] += c * v[i];
    }
    return acc;
}

namespace {

// Irreducible (normal-form) words: sequences of generators and brackets of
// plain generator words, with no two adjacent brackets. Nesting deeper than
// one level always reduces, so depth only distinguishes 0 from >= 1.
std::vector<AtomList> plain_words(int alphabet, int n) {
    std::vector<AtomList> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    for (int g = 0; g < alphabet; ++g)
        for (auto& rest : plain_words(alphabet, n - 1)) {
            AtomList w{Atom{g}};
            w.insert(w.end(), rest.begin(), rest.end());
            out.push_back(std::move(w));
        }
    return out;
}

std::vector<AtomList> irreducible_seq(int alphabet, int n, bool allow_brackets,
                                      bool prev_bracket) {
    std::vector<AtomList> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    for (int g = 0; g < alphabet; ++g)
        for (auto& rest : irreducible_seq(alphabet, n - 1, allow_brackets, false)) {
            AtomList w{Atom{g}};
            w.insert(w.end(), rest.begin(), rest.end());
            out.push_back(std::move(w));
        }
    if (allow_brackets && !prev_bracket)
        for (int m = 1; m <= n; ++m)
            for (auto& inner : plain_words(alphabet, m))
                for (auto& rest : irreducible_seq(alphabet, n - m, allow_brackets, true)) {
                    AtomList w{Atom{inner}};
                    w.insert(w.end(), rest.begin(), rest.end());
                    out.push_back(std::move(w));
                }
    return out;
}

} // namespace

std::vector<BracketedWord> all_bounded_words(int alphabet_size, int max_len, int max_depth) {
    if (alphabet_size < 1) throw std::invalid_argument("all_bounded_words: empty alphabet");
    if (max_len > 6 || max_depth > 4) throw std::invalid_argument("all_bounded_words: bounds too large");
    // memo[(n, d)] = all words with exactly n generators, depth <= d
    std::map<std::pair<int, int>, std::vector<AtomList>> memo;
    auto build = [&](auto&& self, int n, int d) -> const std::vector<AtomList>& {
        auto key = std::make_pair(n, d);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<AtomList> out;
        if (n == 0) {
            out.push_back({});
        } else {
            for (int g = 0; g < alphabet_size; ++g)
                for (const auto& rest : self(self, n - 1, d)) {
                    AtomList w{Atom{g}};
                    w.insert(w.end(), rest.begin(), rest.end());
                    out.push_back(std::move(w));
                }
            if (d >= 1)
                for (int m = 1; m <= n; ++m)
                    for (const auto& inner : self(self, m, d - 1)) {
                        if (inner.empty()) continue;
                        for (const auto& rest : self(self, n - m, d)) {
                            AtomList w{Atom{inner}};
                            w.insert(w.end(), rest.begin(), rest.end());
                            out.push_back(std::move(w));
                        }
                    }
        }
        return memo.emplace(key, std::move(out)).first->second;
    };
    std::vector<BracketedWord> words;
    for (int n = 1; n <= max_len; ++n)
        for (const auto& w : build(build, n, max_depth)) words.push_back(BracketedWord(w));
    return words;
}

std::vector<BracketedWord> enumerate_words(int alphabet_size, int max_len, int max_depth) {
    if (alphabet_size < 1) throw std::invalid_argument("enumerate_words: empty alphabet");
    if (max_len > 8 || max_depth > 4) throw std::invalid_argument("enumerate_words: bounds too large");
    std::vector<BracketedWord> out;
    for (int n = 1; n <= max_len; ++n)
        for (auto& w : irreducible_seq(alphabet_size, n, max_depth >= 1, false))
            out.push_back(BracketedWord(std::move(w)));
    std::sort(out.begin(), out.end(), [](const BracketedWord& a, const BracketedWord& b) {
        if (a.generator_count() != b.generator_count())
            return a.generator_count() < b.generator_count();
        return a < b;
    });
    // every enumerated word must be irreducible by construction
    for (const auto& w : out)
        if (!is_irreducible(w)) throw std::logic_error("enumerate_words: reducible word generated");
    return out;
}

} // namespace triavg

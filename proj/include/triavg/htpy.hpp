#pragma once

#include "triavg/algebra.hpp"
#include "triavg/oper.hpp"
#include "triavg/report.hpp"
#include "triavg/trees.hpp"

#include <map>

namespace triavg {

/// Finitely supported graded vector space over a degree window.
struct GradedSpace {
    int dmin = 0, dmax = -1;
    std::vector<int> dims;  // dims[d - dmin]

    int dim(int d) const { return (d < dmin || d > dmax) ? 0 : dims[d - dmin]; }
    bool in_window(int d) const { return d >= dmin && d <= dmax; }
    static GradedSpace concentrated(int degree, int dim);
    /// Graded direct sum, first summand's basis first in every degree.
    static GradedSpace sum(const GradedSpace& a, const GradedSpace& b);
};

struct GElem {
    int deg;
    int idx;
    friend auto operator<=>(const GElem&, const GElem&) = default;
};

struct HKey {
    int tree;  // index in enumerate_trees(arity), or -1 for tree-free families
    std::vector<GElem> in;
    GElem out;
    friend auto operator<=>(const HKey&, const HKey&) = default;
};

/// Family of graded multilinear operations pi_k, arities 1..max_arity,
/// all raising degree by exactly `map_degree`; optionally keyed by trees.
class HFamily {
public:
    HFamily() = default;
    HFamily(GradedSpace sp, int map_degree, bool tree_keyed, int max_arity = 4)
        : sp_(std::move(sp)), deg_(map_degree), trees_(tree_keyed), max_(max_arity) {}

    const GradedSpace& space() const { return sp_; }
    int map_degree() const { return deg_; }
    bool tree_keyed() const { return trees_; }
    int max_arity() const { return max_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<HKey, Rat>& coeffs() const { return c_; }

    /// Validates window membership, the degree-raising rule, and the tree
    /// index; throws std::invalid_argument otherwise.
    void add(const HKey& k, const Rat& v);
    Rat coeff(const HKey& k) const;
    HFamily& operator+=(const HFamily& o);
    HFamily& scale(const Rat& s);
    friend bool operator==(const HFamily& a, const HFamily& b) { return a.c_ == b.c_; }

    /// pi_k(tree; basis tuple) as a sparse vector of (GElem, Rat).
    std::map<GElem, Rat> eval(int arity, int tree, const std::vector<GElem>& in) const;

private:
    GradedSpace sp_;
    int deg_ = 1;
    bool trees_ = false;
    int max_ = 4;
    std::map<HKey, Rat> c_;
};

/// A-infinity identity over all basis tuples for n <= n_max (tree-free family).
Report ainf_check(const HFamily& mu, int n_max);

/// Triass-infinity identity over T in T_n and basis tuples; violations carry
/// the tree index first in the tuple. The diassociative sub-report is the
/// filter over planar binary trees.
Report triassinf_check(const HFamily& pi, int n_max);
bool is_binary_tree(const PlanarTree& t);
Report diassinf_subreport(const Report& full, int n_max);

/// Graded circle product and bracket of tree-keyed families. The plugging
/// sign is the Koszul rule (-1)^{|varpi| (|x_1| + .. + |x_{i-1}|)}.
HFamily diamond(const HFamily& pi, const HFamily& varpi);
HFamily big_bracket(const HFamily& pi, const HFamily& varpi);

/// Restriction of a tree-keyed family to a distinguished-tree line, yielding
/// a tree-free family (used for the three A-infinity structures).
HFamily restrict_distinguished(const HFamily& pi, BulletKind kind);

/// Two-space data: ops live on the graded sum A (+) B with the typing
/// all-A inputs -> A (mu), all-B -> B (nu), mixed -> B (eta).
struct AInfRep {
    GradedSpace space_a, space_b;
    HFamily ops;  // on GradedSpace::sum(space_a, space_b), tree-free

    bool is_a_elem(const GElem& e) const { return e.idx < space_a.dim(e.deg); }
};

/// Typing constraint of the representation data.
bool rep_well_typed(const AInfRep& r);

/// Mixed-slot instances of the A-infinity identity (>= 1 slot from each side).
Report ainf_rep_check(const AInfRep& r, int n_max);

/// Induced Triass-infinity structure on A (+) B:
/// pi_k(T; ..) = (mu_k(a_1..a_k), lambda^{l-2} (eta_k + nu_k)(a's, x's at joints)).
HFamily induced_triassinf(const AInfRep& r, const Rat& lambda);

/// Homotopy relative averaging operator: degree-0 tree-keyed family with
/// all-B inputs and A output.
struct HomotopyOperator {
    HFamily components;  // on the same combined space as the setup
};

struct HomotopyDefect {
    HFamily defect;        // p(e^{[-,P]} pi): all-B -> A part
    HFamily induced_on_b;  // pi^P, the all-B -> B restriction
    int exponential_terms = 0;
};

/// Expands e^{[-,P]} pi with a hard iteration bound of 8; throws
/// std::runtime_error when the series fails to terminate.
HomotopyDefect homotopy_operator_check(const AInfRep& r, const Rat& lambda,
                                       const HomotopyOperator& p);

// ---- strictification helpers -------------------------------------------

/// Degree(-1)-concentrated Triass-infinity family of a triassociative algebra.
HFamily strict_triassinf(const TriassSpec& d);

/// Degree(-1)-concentrated representation data of a bimodule.
AInfRep strict_rep(const BimodSpec& b);

/// The arity-1 homotopy operator of a strict P : B -> A.
HomotopyOperator strict_operator(const AInfRep& r, const LinearOp& p, int dim_a);

} // namespace triavg

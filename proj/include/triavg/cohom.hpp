#pragma once

#include "triavg/cochain.hpp"

namespace triavg {

/// Plain multilinear map on a based space (no tree key), sparse.
struct MKey {
    std::vector<int> in;
    int out;
    friend auto operator<=>(const MKey&, const MKey&) = default;
};

class NAryMap {
public:
    NAryMap() : arity_(0), dim_(0) {}
    NAryMap(int arity, int dim) : arity_(arity), dim_(dim) {}

    int arity() const { return arity_; }
    int dim() const { return dim_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<MKey, Rat>& coeffs() const { return c_; }
    void add(const MKey& k, const Rat& v);
    Rat coeff(const MKey& k) const;
    NAryMap& operator+=(const NAryMap& o);
    NAryMap& operator-=(const NAryMap& o);
    NAryMap& scale(const Rat& s);
    friend bool operator==(const NAryMap& a, const NAryMap& b) {
        return a.arity_ == b.arity_ && a.dim_ == b.dim_ && a.c_ == b.c_;
    }

private:
    int arity_, dim_;
    std::map<MKey, Rat> c_;
};

/// Hochschild differential of the algebra with the given structure tensor.
NAryMap hochschild_delta(const Tensor3& product, const NAryMap& f);

/// Cochain of the relative-averaging complex in degree n:
/// `maps` is the (f, g, h) block realized as one n-ary map on A (+) B with
/// pure-A inputs landing in A and every other pattern landing in B;
/// `gamma` is the operator block in Hom(K[T_{n-1}] (x) B^{n-1}, A)
/// (absent in degree 1).
struct RAvgCochain {
    int degree = 0;
    NAryMap maps;
    Cochain gamma;
};

/// Working context: fixes (A, B, P, lambda), the trivial-extension product
/// on E = A (+) B, and the basis indexers of all four cochain theories.
class CohomologyContext {
public:
    explicit CohomologyContext(RAvgSpec s);

    const RAvgContext& ravg() const { return ctx_; }
    int dimA() const { return ctx_.dimA(); }
    int dimB() const { return ctx_.dimB(); }
    int dimE() const { return ctx_.dim(); }
    const Tensor3& ext_product() const { return ext_; }

    /// Membership in the AssAct cochain space (pure-A -> A, mixed/all-B -> B).
    bool assact_member(const NAryMap& m) const;

    NAryMap delta_assact(const NAryMap& m) const;

    /// theta_P(f, g, h) in Hom(K[T_n] (x) B^n, A).
    Cochain theta_p(const NAryMap& m) const;

    RAvgCochain delta_ravg(const RAvgCochain& c) const;

    /// pi_{f,g,h}: tree-keyed embedding of the (f,g,h) block into C(A+B, A+B),
    /// with the lambda^{k-2} scalars at k grafting factors.
    Cochain embed_maps(const NAryMap& m) const;
    /// Inverse of embed_maps; throws std::domain_error off the image.
    NAryMap unembed_maps(const Cochain& h) const;

    // ---- basis indexing ----------------------------------------------
    struct Basis {
        std::vector<RAvgCochain> elems;  // basis cochains (unit coefficient)
        std::size_t size() const { return elems.size(); }
    };
    const Basis& assact_basis(int n) const;
    const Basis& ravg_basis(int n) const;
    const Basis& operator_basis(int n) const;  // C^n(B, A), stored in gamma
    const Basis& avg_basis(int n) const;       // requires B = A adjoint data

    RatVector assact_coords(const NAryMap& m, int n) const;
    RatVector ravg_coords(const RAvgCochain& c, int n) const;
    RatVector operator_coords(const Cochain& f, int n) const;

    RatMatrix matrix_assact(int n) const;    // delta: C^n -> C^{n+1}
    RatMatrix matrix_ravg(int n) const;
    RatMatrix matrix_operator(int n) const;  // d_P
    RatMatrix matrix_avg(int n) const;

    // ---- averaging subcomplex (B = A adjoint) ------------------------
    /// i(f, gamma) = (f, f, f, gamma); throws if the bimodule is not adjoint.
    RAvgCochain embed_avg(const NAryMap& f_pure, const Cochain& gamma) const;
    /// Splits delta_ravg(i(..)) back; throws std::domain_error when the
    /// image leaves im(i) (subcomplex invariance violated).
    std::pair<NAryMap, Cochain> unembed_avg(const RAvgCochain& c) const;

private:
    RAvgContext ctx_;
    Tensor3 ext_;
    mutable std::map<int, Basis> assact_cache_, ravg_cache_, op_cache_, avg_cache_;
};

struct BettiReport {
    int degree = 0;
    std::size_t dim_cochains = 0;
    std::size_t dim_kernel = 0;
    std::size_t dim_image_prev = 0;
    std::size_t dim_h = 0;
    std::vector<RatVector> representatives;  // coordinates in the degree-n basis
};

enum class Theory { Triass, Operator, RAvg, AssAct, Avg };

/// Canonical basis keys of C^n(D, D), ordered (tree, inputs, output).
std::vector<CochainKey> triass_basis_keys(int dim, int n);

BettiReport triass_cohomology(const TriassSpec& d, int n);
BettiReport cohomology(const CohomologyContext& c, Theory t, int n);

/// Exactness findings for the long exact sequence at degrees 1..max_degree.
struct LesReport {
    struct Node {
        std::string name;
        std::size_t dim_h;
        std::size_t rank_in;
        std::size_t dim_ker_out;
        bool exact;
    };
    std::vector<Node> nodes;
    bool ok() const {
        for (const auto& n : nodes)
            if (!n.exact) return false;
        return true;
    }
};

LesReport long_exact_check(const CohomologyContext& c, int max_degree);

// ---- infinitesimal deformations --------------------------------------

struct Direction {
    Tensor3 mu1, nu1, l1, r1;  // same shapes as the bimodule tensors
    LinearOp p1;               // dimB -> dimA
};

/// Axioms of the deformed structure modulo t^2 (dual-number arithmetic),
/// plus the cocycle test of (mu1, nu1, l1 + r1, P1); the two verdicts are
/// returned side by side.
struct InfinitesimalReport {
    bool deformation_mod_t2 = false;
    bool is_cocycle = false;
    Report axiom_failures;
};

InfinitesimalReport check_infinitesimal(const CohomologyContext& c, const Direction& d);

RAvgCochain direction_to_cochain(const CohomologyContext& c, const Direction& d);

/// Coboundary of degree-1 data (phi1, psi1), i.e. the trivial-deformation
/// directions delta_rAvg(phi1, psi1).
RAvgCochain coboundary_of_pair(const CohomologyContext& c, const LinearOp& phi1,
                               const LinearOp& psi1);

/// Equivalence of two 2-cocycles: difference lies in im(delta^1)?
bool deformations_equivalent(const CohomologyContext& c, const RAvgCochain& x,
                             const RAvgCochain& y);

/// H^2 representatives in ravg_basis(2) coordinates.
std::vector<RatVector> classify_deformations(const CohomologyContext& c);

} // namespace triavg

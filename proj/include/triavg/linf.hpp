#pragma once

#include "triavg/cohom.hpp"
#include "triavg/report.hpp"

namespace triavg {

/// Element of s^{-1}h (+) a. Both parts live on the carrier A (+) B; a
/// zero-arity cochain stands for an absent part. Degrees: arity(h) - 2 and
/// arity(a) - 1 must agree on homogeneous elements.
struct LInfElement {
    Cochain h;  // member of the subalgebra h (A-out needs all-A in, B-out needs a B in)
    Cochain a;  // member of a = C(B, A) (all-B in, A-out), embedded

    bool is_zero() const { return h.is_zero() && a.is_zero(); }
    LInfElement& operator+=(const LInfElement& o);
    LInfElement& scale(const Rat& s);
};

/// V-data (g, a, p, Delta = 0) realized on the cochain spaces of A (+) B.
class VData {
public:
    explicit VData(RAvgSpec s) : ctx_(std::move(s)) {}
    const RAvgContext& ctx() const { return ctx_; }

    bool in_h(const Cochain& f) const;
    bool in_a(const Cochain& f) const { return ctx_.in_a_part(f); }
    Cochain p(const Cochain& f) const { return ctx_.project_a(f); }

    /// Degree of a homogeneous element; throws when parts disagree.
    int degree(const LInfElement& x) const;

    /// Structure map l_k evaluated on arbitrary-order inputs (Voronov).
    LInfElement lk(const std::vector<LInfElement>& args) const;

    /// Twisted map l_k^alpha(x_1..x_k); alpha must be a degree-0 element.
    LInfElement twisted_lk(const LInfElement& alpha, const std::vector<LInfElement>& args) const;

    /// Maurer-Cartan sum over 1 <= k <= max_k of the twisted structure
    /// (alpha absent => untwisted).
    LInfElement mc_sum(const LInfElement& candidate, int max_k = 5) const;
    LInfElement mc_sum_twisted(const LInfElement& alpha, const LInfElement& candidate,
                               int max_k = 5) const;

    /// The canonical candidate (s^{-1} pi_lambda, P).
    LInfElement canonical_alpha() const;

    /// l_k(alpha, ..., alpha); used to check the k >= 4 collapse.
    LInfElement lk_diagonal(const LInfElement& alpha, int k) const;

    /// Shuffle-sum higher Jacobi identities up to n_max on the sample tuples.
    Report higher_jacobi(const std::vector<LInfElement>& samples, int n_max) const;

private:
    RAvgContext ctx_;
};

/// Defect of (s^{-1} pi_lambda, P); zero iff bimodule axioms and the
/// four-clause operator identity hold.
LInfElement mc_pair_check(const RAvgSpec& s);

/// Lexicographically ordered (i, n-i) shuffles of {0, .., n-1}.
std::vector<std::vector<int>> shuffles(int i, int n);

} // namespace triavg

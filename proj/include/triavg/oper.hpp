#pragma once

#include "triavg/algebra.hpp"

namespace triavg {

/// Relative averaging data: P : B -> A over a bimodule, with weight lambda.
struct RAvgSpec {
    BimodSpec bimodule;
    LinearOp P;      // dimB -> dimA
    Rat lambda;
};

struct RAvgMorphism {
    LinearOp phi;  // A -> A'
    LinearOp psi;  // B -> B'
};

/// P(a)P(b) = P(P(a)b) = P(aP(b)) = lambda P(ab) over basis pairs.
/// Tags avg:1=2, avg:1=3, avg:1=4. Throws std::domain_error for lambda = 0.
Report check_averaging(const AssocSpec& a, const LinearOp& p, const Rat& lambda,
                       bool stop_at_first = false);

/// Relaxed reading that makes sense at weight 0: the three unweighted
/// equalities plus lambda P(a)P(b) = lambda^2 P(ab).
Report check_averaging_relaxed(const AssocSpec& a, const LinearOp& p, const Rat& lambda,
                               bool stop_at_first = false);

/// Four-way identity for P : B -> A; sub-report tags ravg:* plus the
/// unweighted clauses tagged uavg:*.
Report check_relative_averaging(const RAvgSpec& s, bool stop_at_first = false);

/// Graph criterion: Gr(P) closed under the three semidirect products.
bool graph_check(const RAvgSpec& s);

/// phi^{-1} P phi for an algebra automorphism phi; P must verify as an
/// averaging operator of weight 1 beforehand.
LinearOp conjugate(const AssocSpec& a, const LinearOp& p, const LinearOp& phi);

/// Induced triassociative structure on B:
/// x -|_P y = x . P(y), x |-_P y = P(x) . y, x _|__P y = lambda x y.
TriassSpec induced_triass(const RAvgSpec& s);

/// Nijenhuis operator N_P(a, x) = (P(x), x) on A (+) B; N_P is Nijenhuis for
/// all three semidirect products exactly when P is relative averaging.
LinearOp nijenhuis_of(const RAvgSpec& s);

/// Five morphism conditions: both algebra maps, both equivariances, phi P = P' psi.
Report check_ravg_morphism(const RAvgSpec& src, const RAvgSpec& dst, const RAvgMorphism& m,
                           bool stop_at_first = false);

/// Adjoint relative form of a plain averaging algebra (B = A, actions = mu).
RAvgSpec as_relative(const AssocSpec& a, const LinearOp& p, const Rat& lambda);

} // namespace triavg

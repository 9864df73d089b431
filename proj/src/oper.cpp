#include "triavg/oper.hpp"

#include <stdexcept>

namespace triavg {

namespace {

RatVector basis_vec(int dim, int i) {
    RatVector v(dim);
    v[i] = Rat(1);
    return v;
}

bool record_if_diff(Report& rep, const std::string& tag, std::vector<int> tuple,
                    const RatVector& lhs, const RatVector& rhs) {
    if (lhs == rhs) return false;
    rep.add(tag, std::move(tuple), vec_str(lhs), vec_str(rhs));
    return true;
}

} // namespace

Report check_averaging(const AssocSpec& a, const LinearOp& p, const Rat& lambda,
                       bool stop_at_first) {
    if (lambda.is_zero())
        throw std::domain_error("check_averaging: weight 0 (use the relaxed mode)");
    if (p.src_dim != a.dim || p.dst_dim != a.dim)
        throw std::invalid_argument("check_averaging: operator not square on the algebra");
    Report rep;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            RatVector x = basis_vec(a.dim, i), y = basis_vec(a.dim, j);
            RatVector px = p.apply_basis(i), py = p.apply_basis(j);
            RatVector lhs = a.mu.apply(px, py);
            RatVector c2 = p.apply(a.mu.apply(px, y));
            RatVector c3 = p.apply(a.mu.apply(x, py));
            RatVector c4 = p.apply(a.mu.apply_basis(i, j));
            for (Rat& v : c4) v *= lambda;
            if (record_if_diff(rep, "avg:1=2", {i, j}, lhs, c2) && stop_at_first) return rep;
            if (record_if_diff(rep, "avg:1=3", {i, j}, lhs, c3) && stop_at_first) return rep;
            if (record_if_diff(rep, "avg:1=4", {i, j}, lhs, c4) && stop_at_first) return rep;
        }
    return rep;
}

Report check_averaging_relaxed(const AssocSpec& a, const LinearOp& p, const Rat& lambda,
                               bool stop_at_first) {
    if (p.src_dim != a.dim || p.dst_dim != a.dim)
        throw std::invalid_argument("check_averaging_relaxed: operator not square");
    Report rep;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            RatVector x = basis_vec(a.dim, i), y = basis_vec(a.dim, j);
            RatVector px = p.apply_basis(i), py = p.apply_basis(j);
            RatVector lhs = a.mu.apply(px, py);
            RatVector c2 = p.apply(a.mu.apply(px, y));
            RatVector c3 = p.apply(a.mu.apply(x, py));
            if (record_if_diff(rep, "avg:1=2", {i, j}, lhs, c2) && stop_at_first) return rep;
            if (record_if_diff(rep, "avg:1=3", {i, j}, lhs, c3) && stop_at_first) return rep;
            RatVector wl = lhs, wr = p.apply(a.mu.apply_basis(i, j));
            for (Rat& v : wl) v *= lambda;
            for (Rat& v : wr) v *= lambda * lambda;
            if (record_if_diff(rep, "avg:weight", {i, j}, wl, wr) && stop_at_first) return rep;
        }
    return rep;
}

Report check_relative_averaging(const RAvgSpec& s, bool stop_at_first) {
    if (s.lambda.is_zero())
        throw std::domain_error("check_relative_averaging: weight 0");
    const int dA = s.bimodule.algebra.dim, dB = s.bimodule.dimB;
    if (s.P.src_dim != dB || s.P.dst_dim != dA)
        throw std::invalid_argument("check_relative_averaging: P shape mismatch");
    Report rep;
    const Tensor3 &mu = s.bimodule.algebra.mu, &nu = s.bimodule.nu;
    const Tensor3 &l = s.bimodule.left, &r = s.bimodule.right;
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dB; ++j) {
            RatVector x = basis_vec(dB, i), y = basis_vec(dB, j);
            RatVector px = s.P.apply_basis(i), py = s.P.apply_basis(j);
            RatVector lhs = mu.apply(px, py);
            RatVector c2 = s.P.apply(l.apply(px, y));
            RatVector c3 = s.P.apply(r.apply(x, py));
            RatVector c4 = s.P.apply(nu.apply_basis(i, j));
            for (Rat& v : c4) v *= s.lambda;
            // unweighted sub-identities first, then the weighted clause
            if (record_if_diff(rep, "uavg:1=2", {i, j}, lhs, c2) && stop_at_first) return rep;
            if (record_if_diff(rep, "uavg:1=3", {i, j}, lhs, c3) && stop_at_first) return rep;
            if (record_if_diff(rep, "ravg:1=4", {i, j}, lhs, c4) && stop_at_first) return rep;
        }
    return rep;
}

bool graph_check(const RAvgSpec& s) {
    const int dA = s.bimodule.algebra.dim, dB = s.bimodule.dimB, n = dA + dB;
    TriassSpec d = semidirect(s.bimodule, s.lambda);
    SpanBuilder span(n);
    std::vector<RatVector> graph;
    for (int j = 0; j < dB; ++j) {
        RatVector v(n);
        RatVector pj = s.P.apply_basis(j);
        for (int i = 0; i < dA; ++i) v[i] = pj[i];
        v[dA + j] = Rat(1);
        span.add(v);
        graph.push_back(std::move(v));
    }
    for (const auto& u : graph)
        for (const auto& v : graph)
            for (int w = 0; w < 3; ++w)
                if (!span.contains(d.product(w).apply(u, v))) return false;
    return true;
}

LinearOp conjugate(const AssocSpec& a, const LinearOp& p, const LinearOp& phi) {
    if (phi.src_dim != a.dim || phi.dst_dim != a.dim)
        throw std::invalid_argument("conjugate: phi not square on the algebra");
    RatMatrix inv = inverse(phi.matrix);  // throws when singular
    // automorphism check: phi(xy) = phi(x)phi(y) on basis pairs
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            RatVector lhs = phi.apply(a.mu.apply_basis(i, j));
            RatVector rhs = a.mu.apply(phi.apply_basis(i), phi.apply_basis(j));
            if (lhs != rhs) throw std::domain_error("conjugate: phi is not an algebra automorphism");
        }
    Report pr = check_averaging(a, p, Rat(1), true);
    if (!pr.ok()) throw std::domain_error("conjugate: P is not averaging of weight 1");
    LinearOp out(a.dim, a.dim);
    out.matrix = inv.mul(p.matrix).mul(phi.matrix);
    return out;
}

TriassSpec induced_triass(const RAvgSpec& s) {
    Report pre = check_relative_averaging(s, true);
    if (!pre.ok()) throw std::domain_error("induced_triass: operator is not relative averaging");
    const int dB = s.bimodule.dimB;
    TriassSpec d(dB);
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dB; ++j) {
            RatVector dv = s.bimodule.right.apply(basis_vec(dB, i), s.P.apply_basis(j));
            RatVector vv = s.bimodule.left.apply(s.P.apply_basis(i), basis_vec(dB, j));
            for (int k = 0; k < dB; ++k) {
                d.dashv.at(i, j, k) = dv[k];
                d.vdash.at(i, j, k) = vv[k];
                d.perp.at(i, j, k) = s.lambda * s.bimodule.nu.at(i, j, k);
            }
        }
    return d;
}

LinearOp nijenhuis_of(const RAvgSpec& s) {
    // (a, x) -> (P(x), x), the projection onto the graph of P. The B-part
    // must survive or the perp-product case of the criterion degenerates.
    const int dA = s.bimodule.algebra.dim, dB = s.bimodule.dimB, n = dA + dB;
    LinearOp op(n, n);
    for (int j = 0; j < dB; ++j) {
        RatVector pj = s.P.apply_basis(j);
        for (int i = 0; i < dA; ++i) op.matrix.at(i, dA + j) = pj[i];
        op.matrix.at(dA + j, dA + j) = Rat(1);
    }
    return op;
}

Report check_ravg_morphism(const RAvgSpec& src, const RAvgSpec& dst, const RAvgMorphism& m,
                           bool stop_at_first) {
    const int dA = src.bimodule.algebra.dim, dB = src.bimodule.dimB;
    const int dA2 = dst.bimodule.algebra.dim, dB2 = dst.bimodule.dimB;
    if (m.phi.src_dim != dA || m.phi.dst_dim != dA2 || m.psi.src_dim != dB || m.psi.dst_dim != dB2)
        throw std::invalid_argument("check_ravg_morphism: shape mismatch");
    Report rep;
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j) {
            RatVector lhs = m.phi.apply(src.bimodule.algebra.mu.apply_basis(i, j));
            RatVector rhs = dst.bimodule.algebra.mu.apply(m.phi.apply_basis(i), m.phi.apply_basis(j));
            if (record_if_diff(rep, "mor:algA", {i, j}, lhs, rhs) && stop_at_first) return rep;
        }
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dB; ++j) {
            RatVector lhs = m.psi.apply(src.bimodule.nu.apply_basis(i, j));
            RatVector rhs = dst.bimodule.nu.apply(m.psi.apply_basis(i), m.psi.apply_basis(j));
            if (record_if_diff(rep, "mor:algB", {i, j}, lhs, rhs) && stop_at_first) return rep;
        }
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j) {
            RatVector lhs = m.psi.apply(src.bimodule.left.apply_basis(i, j));
            RatVector rhs = dst.bimodule.left.apply(m.phi.apply_basis(i), m.psi.apply_basis(j));
            if (record_if_diff(rep, "mor:left", {i, j}, lhs, rhs) && stop_at_first) return rep;
        }
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dA; ++j) {
            RatVector lhs = m.psi.apply(src.bimodule.right.apply_basis(i, j));
            RatVector rhs = dst.bimodule.right.apply(m.psi.apply_basis(i), m.phi.apply_basis(j));
            if (record_if_diff(rep, "mor:right", {i, j}, lhs, rhs) && stop_at_first) return rep;
        }
    for (int j = 0; j < dB; ++j) {
        RatVector lhs = m.phi.apply(src.P.apply_basis(j));
        RatVector rhs = dst.P.apply(m.psi.apply_basis(j));
        if (record_if_diff(rep, "mor:P", {j}, lhs, rhs) && stop_at_first) return rep;
    }
    return rep;
}

RAvgSpec as_relative(const AssocSpec& a, const LinearOp& p, const Rat& lambda) {
    BimodSpec bm(a, a.dim);
    bm.nu = a.mu;
    bm.left = a.mu;
    bm.right = a.mu;
    RAvgSpec s;
    s.bimodule = std::move(bm);
    s.P = p;
    s.lambda = lambda;
    return s;
}

} // namespace triavg

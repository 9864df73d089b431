#include "triavg/algebra.hpp"

#include <stdexcept>

namespace triavg {

RatVector Tensor3::apply(const RatVector& x, const RatVector& y) const {
    RatVector out(dout_);
    for (int i = 0; i < d1_; ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < d2_; ++j) {
            if (y[j].is_zero()) continue;
            Rat c = x[i] * y[j];
            for (int k = 0; k < dout_; ++k)
                if (!at(i, j, k).is_zero()) out[k] += c * at(i, j, k);
        }
    }
    return out;
}

RatVector Tensor3::apply_basis(int i, int j) const {
    RatVector out(dout_);
    for (int k = 0; k < dout_; ++k) out[k] = at(i, j, k);
    return out;
}

bool Tensor3::is_zero() const {
    for (const Rat& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

LinearOp LinearOp::identity(int n) {
    LinearOp op(n, n);
    op.matrix = RatMatrix::identity(n);
    return op;
}

std::string vec_str(const RatVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

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

Report check_assoc(const AssocSpec& a, bool stop_at_first) {
    Report rep;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            for (int k = 0; k < a.dim; ++k) {
                RatVector lhs = a.mu.apply(a.mu.apply_basis(i, j), basis_vec(a.dim, k));
                RatVector rhs = a.mu.apply(basis_vec(a.dim, i), a.mu.apply_basis(j, k));
                if (record_if_diff(rep, "assoc", {i, j, k}, lhs, rhs) && stop_at_first) return rep;
            }
    return rep;
}

Report check_bimodule(const BimodSpec& b, bool stop_at_first) {
    Report rep;
    const int dA = b.algebra.dim, dB = b.dimB;
    const Tensor3 &mu = b.algebra.mu, &nu = b.nu, &l = b.left, &r = b.right;
    auto eA = [&](int i) { return basis_vec(dA, i); };
    auto eB = [&](int i) { return basis_vec(dB, i); };

    rep.merge(check_assoc(b.algebra, stop_at_first));
    if (stop_at_first && !rep.ok()) return rep;

    struct Id {
        const char* tag;
        int t1, t2, t3;  // which space each slot ranges over: 0 = A, 1 = B
    };
    // bm1: (ab).x = a.(b.x)   bm2: (a.x).b = a.(x.b)   bm3: (x.a).b = x.(ab)
    // bm4: (xy).a = x(y.a)    bm5: (x.a)y  = x(a.y)    bm6: (a.x)y  = a.(xy)
    // bm0: associativity of nu
    auto run = [&](const char* tag, int d1, int d2, int d3,
                   auto&& lhs_f, auto&& rhs_f) -> bool {
        for (int i = 0; i < d1; ++i)
            for (int j = 0; j < d2; ++j)
                for (int k = 0; k < d3; ++k) {
                    if (record_if_diff(rep, tag, {i, j, k}, lhs_f(i, j, k), rhs_f(i, j, k)) &&
                        stop_at_first)
                        return true;
                }
        return false;
    };

    if (run("bm0", dB, dB, dB,
            [&](int i, int j, int k) { return nu.apply(nu.apply_basis(i, j), eB(k)); },
            [&](int i, int j, int k) { return nu.apply(eB(i), nu.apply_basis(j, k)); }))
        return rep;
    if (run("bm1", dA, dA, dB,
            [&](int i, int j, int k) { return l.apply(mu.apply_basis(i, j), eB(k)); },
            [&](int i, int j, int k) { return l.apply(eA(i), l.apply_basis(j, k)); }))
        return rep;
    if (run("bm2", dA, dB, dA,
            [&](int i, int j, int k) { return r.apply(l.apply_basis(i, j), eA(k)); },
            [&](int i, int j, int k) { return l.apply(eA(i), r.apply_basis(j, k)); }))
        return rep;
    if (run("bm3", dB, dA, dA,
            [&](int i, int j, int k) { return r.apply(r.apply_basis(i, j), eA(k)); },
            [&](int i, int j, int k) { return r.apply(eB(i), mu.apply_basis(j, k)); }))
        return rep;
    if (run("bm4", dB, dB, dA,
            [&](int i, int j, int k) { return r.apply(nu.apply_basis(i, j), eA(k)); },
            [&](int i, int j, int k) { return nu.apply(eB(i), r.apply_basis(j, k)); }))
        return rep;
    if (run("bm5", dB, dA, dB,
            [&](int i, int j, int k) { return nu.apply(r.apply_basis(i, j), eB(k)); },
            [&](int i, int j, int k) { return nu.apply(eB(i), l.apply_basis(j, k)); }))
        return rep;
    if (run("bm6", dA, dB, dB,
            [&](int i, int j, int k) { return nu.apply(l.apply_basis(i, j), eB(k)); },
            [&](int i, int j, int k) { return l.apply(eA(i), nu.apply_basis(j, k)); }))
        return rep;
    return rep;
}

Report check_triass(const TriassSpec& d, bool stop_at_first) {
    Report rep;
    const Tensor3 &D = d.dashv, &V = d.vdash, &P = d.perp;
    // (outer, inner) tensor pairs per identity (aN): LHS (x outer y) ... z,
    // RHS x ... (y inner z), encoded as {lhs_out, lhs_in, rhs_out, rhs_in}.
    struct Id { const char* tag; const Tensor3 *lo, *li, *ro, *ri; };
    const Id ids[] = {
        {"a1", &D, &D, &D, &D},   // (x-|y)-|z = x-|(y-|z)
        {"a2", &D, &D, &D, &V},   // (x-|y)-|z = x-|(y|-z)
        {"a3", &D, &V, &V, &D},   // (x|-y)-|z = x|-(y-|z)
        {"a4", &V, &D, &V, &V},   // (x-|y)|-z = x|-(y|-z)
        {"a5", &V, &V, &V, &V},   // (x|-y)|-z = x|-(y|-z)
        {"a6", &D, &D, &D, &P},   // (x-|y)-|z = x-|(y_|_z)
        {"a7", &D, &P, &P, &D},   // (x_|_y)-|z = x_|_(y-|z)
        {"a8", &P, &D, &P, &V},   // (x-|y)_|_z = x_|_(y|-z)
        {"a9", &P, &V, &V, &P},   // (x|-y)_|_z = x|-(y_|_z)
        {"a10", &V, &P, &V, &V},  // (x_|_y)|-z = x|-(y|-z)
        {"a11", &P, &P, &P, &P},  // (x_|_y)_|_z = x_|_(y_|_z)
    };
    for (const Id& id : ids) {
        for (int i = 0; i < d.dim; ++i)
            for (int j = 0; j < d.dim; ++j)
                for (int k = 0; k < d.dim; ++k) {
                    RatVector lhs = id.lo->apply(id.li->apply_basis(i, j), basis_vec(d.dim, k));
                    RatVector rhs = id.ro->apply(basis_vec(d.dim, i), id.ri->apply_basis(j, k));
                    if (record_if_diff(rep, id.tag, {i, j, k}, lhs, rhs) && stop_at_first)
                        return rep;
                }
    }
    return rep;
}

Report check_tridend(const TriDendSpec& d, bool stop_at_first) {
    Report rep;
    const Tensor3 &L = d.prec, &R = d.succ, &M = d.curly;
    const int n = d.dim;
    auto star = [&](const RatVector& x, const RatVector& y) {
        RatVector s = L.apply(x, y);
        RatVector t = R.apply(x, y), u = M.apply(x, y);
        for (int k = 0; k < n; ++k) s[k] += t[k] + u[k];
        return s;
    };
    auto e = [&](int i) { return basis_vec(n, i); };
    struct Id { const char* tag; int kind; };
    for (int i = 0; i < n && (rep.ok() || !stop_at_first); ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::vector<int> t{i, j, k};
                // td1: (x<y)<z = x<(y*z)          td2: (x>y)<z = x>(y<z)
                // td3: (x*y)>z = x>(y>z)          td4: (x>y).z = x>(y.z)
                // td5: (x<y).z = x.(y>z)          td6: (x.y)<z = x.(y<z)
                // td7: (x.y).z = x.(y.z)
                if (record_if_diff(rep, "td1", t, L.apply(L.apply_basis(i, j), e(k)),
                                   L.apply(e(i), star(e(j), e(k)))) && stop_at_first) return rep;
                if (record_if_diff(rep, "td2", t, L.apply(R.apply_basis(i, j), e(k)),
                                   R.apply(e(i), L.apply_basis(j, k))) && stop_at_first) return rep;
                if (record_if_diff(rep, "td3", t, R.apply(star(e(i), e(j)), e(k)),
                                   R.apply(e(i), R.apply_basis(j, k))) && stop_at_first) return rep;
                if (record_if_diff(rep, "td4", t, M.apply(R.apply_basis(i, j), e(k)),
                                   R.apply(e(i), M.apply_basis(j, k))) && stop_at_first) return rep;
                if (record_if_diff(rep, "td5", t, M.apply(L.apply_basis(i, j), e(k)),
                                   M.apply(e(i), R.apply_basis(j, k))) && stop_at_first) return rep;
                if (record_if_diff(rep, "td6", t, L.apply(M.apply_basis(i, j), e(k)),
                                   M.apply(e(i), L.apply_basis(j, k))) && stop_at_first) return rep;
                if (record_if_diff(rep, "td7", t, M.apply(M.apply_basis(i, j), e(k)),
                                   M.apply(e(i), M.apply_basis(j, k))) && stop_at_first) return rep;
            }
    return rep;
}

TriassSpec semidirect(const BimodSpec& b, const Rat& lambda) {
    const int dA = b.algebra.dim, dB = b.dimB, n = dA + dB;
    TriassSpec d(n);
    // basis: A indices 0..dA-1, then B indices dA..dA+dB-1
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dA; ++k) {
                const Rat& c = b.algebra.mu.at(i, j, k);
                d.dashv.at(i, j, k) = c;
                d.vdash.at(i, j, k) = c;
                d.perp.at(i, j, k) = c;
            }
    for (int x = 0; x < dB; ++x)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dB; ++k)
                d.dashv.at(dA + x, j, dA + k) = b.right.at(x, j, k);
    for (int i = 0; i < dA; ++i)
        for (int y = 0; y < dB; ++y)
            for (int k = 0; k < dB; ++k)
                d.vdash.at(i, dA + y, dA + k) = b.left.at(i, y, k);
    for (int x = 0; x < dB; ++x)
        for (int y = 0; y < dB; ++y)
            for (int k = 0; k < dB; ++k)
                d.perp.at(dA + x, dA + y, dA + k) = lambda * b.nu.at(x, y, k);
    return d;
}

Report check_nijenhuis(const TriassSpec& d, const LinearOp& n, bool stop_at_first) {
    if (n.src_dim != d.dim || n.dst_dim != d.dim)
        throw std::invalid_argument("check_nijenhuis: operator shape mismatch");
    Report rep;
    const char* tags[3] = {"nij:dashv", "nij:vdash", "nij:perp"};
    for (int w = 0; w < 3; ++w) {
        const Tensor3& star = d.product(w);
        for (int i = 0; i < d.dim; ++i)
            for (int j = 0; j < d.dim; ++j) {
                RatVector x = basis_vec(d.dim, i), y = basis_vec(d.dim, j);
                RatVector nx = n.apply(x), ny = n.apply(y);
                RatVector lhs = star.apply(nx, ny);
                RatVector inner = star.apply(nx, y);
                RatVector t = star.apply(x, ny);
                for (int k = 0; k < d.dim; ++k) inner[k] += t[k];
                RatVector nxy = n.apply(star.apply(x, y));
                for (int k = 0; k < d.dim; ++k) inner[k] -= nxy[k];
                RatVector rhs = n.apply(inner);
                if (record_if_diff(rep, tags[w], {i, j}, lhs, rhs) && stop_at_first) return rep;
            }
    }
    return rep;
}

std::vector<RatVector> ideal_closure(const TriassSpec& d, const std::vector<RatVector>& generators) {
    // span saturation to a fixed point, worklist style
    SpanBuilder acc(d.dim);
    std::vector<RatVector> work;
    for (const auto& g : generators)
        if (acc.add(g)) work.push_back(g);
    for (std::size_t h = 0; h < work.size(); ++h) {
        RatVector v = work[h];
        for (int w = 0; w < 3; ++w) {
            const Tensor3& star = d.product(w);
            for (int i = 0; i < d.dim; ++i) {
                RatVector e = basis_vec(d.dim, i);
                RatVector a = star.apply(e, v);
                if (acc.add(a)) work.push_back(a);
                RatVector b = star.apply(v, e);
                if (acc.add(b)) work.push_back(b);
            }
        }
    }
    if (work.empty()) return {};
    Rref e = rref(RatMatrix::from_rows(work, d.dim));
    std::vector<RatVector> basis;
    for (std::size_t r = 0; r < e.rank(); ++r) basis.push_back(e.mat.row(r));
    return basis;
}

TriassQuotient triass_to_ravg(const TriassSpec& d) {
    const int n = d.dim;
    // generators x -| y - x |- y over basis pairs
    std::vector<RatVector> gens;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RatVector g = d.dashv.apply_basis(i, j);
            RatVector h = d.vdash.apply_basis(i, j);
            for (int k = 0; k < n; ++k) g[k] -= h[k];
            gens.push_back(std::move(g));
        }
    TriassQuotient out;
    out.ideal_basis = ideal_closure(d, gens);

    // coset representatives: standard basis columns completing the echelonized ideal
    SpanBuilder span(n);
    for (const auto& v : out.ideal_basis) span.add(v);
    for (int j = 0; j < n; ++j) {
        RatVector e(n);
        e[j] = Rat(1);
        if (span.add(e)) out.rep_cols.push_back(j);
    }
    const int q = int(out.rep_cols.size());  // dim D/I

    // projection D -> D/I: coordinates of [v] w.r.t. chosen representatives,
    // solved against [ideal basis | representative columns]
    const int ni = int(out.ideal_basis.size());
    RatMatrix mat(n, ni + q);
    for (int c = 0; c < ni; ++c)
        for (int r = 0; r < n; ++r) mat.at(r, c) = out.ideal_basis[c][r];
    for (int c = 0; c < q; ++c) mat.at(out.rep_cols[c], ni + c) = Rat(1);
    LinearOp proj(n, q);
    for (int j = 0; j < n; ++j) {
        RatVector e(n), x;
        e[j] = Rat(1);
        if (!solve(mat, e, x)) throw std::logic_error("triass_to_ravg: projection solve failed");
        for (int r = 0; r < q; ++r) proj.matrix.at(r, j) = x[ni + r];
    }
    out.q = proj;

    // A = D/I with [x][y] = [x -| y] computed on representatives
    AssocSpec A(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            RatVector prod = d.dashv.apply_basis(out.rep_cols[i], out.rep_cols[j]);
            RatVector cls = proj.apply(prod);
            for (int k = 0; k < q; ++k) A.mu.at(i, j, k) = cls[k];
        }

    // B = (D, perp) with actions [x].y = rep(x) |- y, y.[x] = y -| rep(x)
    BimodSpec bm(A, n);
    bm.nu = d.perp;
    for (int i = 0; i < q; ++i)
        for (int y = 0; y < n; ++y) {
            RatVector lv = d.vdash.apply_basis(out.rep_cols[i], y);
            RatVector rv = d.dashv.apply_basis(y, out.rep_cols[i]);
            for (int k = 0; k < n; ++k) {
                bm.left.at(i, y, k) = lv[k];
                bm.right.at(y, i, k) = rv[k];
            }
        }
    // well-definedness: the ideal must act trivially through |- and -|
    for (const auto& v : out.ideal_basis)
        for (int y = 0; y < n; ++y) {
            RatVector e = basis_vec(n, y);
            RatVector lv = d.vdash.apply(v, e);
            RatVector rv = d.dashv.apply(e, v);
            for (int k = 0; k < n; ++k)
                if (!lv[k].is_zero() || !rv[k].is_zero())
                    throw std::domain_error("triass_to_ravg: ideal does not act trivially (input not triassociative?)");
        }
    out.bimodule = std::move(bm);
    return out;
}

TriDendSpec induced_tridendriform(const TriassSpec& d) {
    TriDendSpec t(d.dim);
    t.prec = d.dashv;
    t.succ = d.vdash;
    for (int i = 0; i < d.dim; ++i)
        for (int j = 0; j < d.dim; ++j)
            for (int k = 0; k < d.dim; ++k) t.curly.at(i, j, k) = -d.perp.at(i, j, k);
    return t;
}

Report check_triass_morphism(const TriassSpec& src, const TriassSpec& dst, const LinearOp& psi) {
    if (psi.src_dim != src.dim || psi.dst_dim != dst.dim)
        throw std::invalid_argument("check_triass_morphism: shape mismatch");
    Report rep;
    const char* tags[3] = {"mor:dashv", "mor:vdash", "mor:perp"};
    for (int w = 0; w < 3; ++w)
        for (int i = 0; i < src.dim; ++i)
            for (int j = 0; j < src.dim; ++j) {
                RatVector lhs = psi.apply(src.product(w).apply_basis(i, j));
                RatVector rhs = dst.product(w).apply(psi.apply_basis(i), psi.apply_basis(j));
                record_if_diff(rep, tags[w], {i, j}, lhs, rhs);
            }
    return rep;
}

} // namespace triavg

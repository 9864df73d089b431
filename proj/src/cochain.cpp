#include "triavg/cochain.hpp"

#include <stdexcept>

namespace triavg {

void Cochain::add(const CochainKey& k, const Rat& v) {
    if (v.is_zero()) return;
    auto it = c_.find(k);
    if (it == c_.end()) {
        c_.emplace(k, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
}

Rat Cochain::coeff(const CochainKey& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Rat() : it->second;
}

Cochain& Cochain::operator+=(const Cochain& o) {
    for (const auto& [k, v] : o.c_) add(k, v);
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
    for (const auto& [k, v] : o.c_) add(k, -v);
    return *this;
}

Cochain& Cochain::scale(const Rat& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& [k, v] : c_) v *= s;
    return *this;
}

RatVector Cochain::eval(int tree, const std::vector<RatVector>& xs) const {
    RatVector out(dst_);
    for (const auto& [k, v] : c_) {
        if (k.tree != tree) continue;
        Rat c = v;
        bool dead = false;
        for (int s = 0; s < arity_; ++s) {
            const Rat& x = xs[s][k.in[s]];
            if (x.is_zero()) { dead = true; break; }
            c *= x;
        }
        if (!dead) out[k.out] += c;
    }
    return out;
}

Cochain circ(const Cochain& f, int i, const Cochain& g) {
    const int m = f.arity(), n = g.arity();
    if (i < 1 || i > m) throw std::invalid_argument("circ: slot out of range");
    if (f.src_dim() != g.dst_dim() || f.src_dim() != g.src_dim())
        throw std::invalid_argument("circ: dimension mismatch");
    Cochain out(m + n - 1, f.src_dim(), f.dst_dim());
    const RTable& tab = r_table(m, i, n);
    // group f by tree, g by (tree, out)
    std::map<int, std::vector<const std::pair<const CochainKey, Rat>*>> f_by_tree;
    for (const auto& e : f.coeffs()) f_by_tree[e.first.tree].push_back(&e);
    std::map<std::pair<int, int>, std::vector<const std::pair<const CochainKey, Rat>*>> g_by;
    for (const auto& e : g.coeffs()) g_by[{e.first.tree, e.first.out}].push_back(&e);

    const int n_trees = int(enumerate_trees(m + n - 1).size());
    for (int t = 0; t < n_trees; ++t) {
        auto fit = f_by_tree.find(tab.zero[t]);
        if (fit == f_by_tree.end()) continue;
        for (const auto* fe : fit->second) {
            auto git = g_by.find({tab.slot[t], fe->first.in[i - 1]});
            if (git == g_by.end()) continue;
            for (const auto* ge : git->second) {
                CochainKey k;
                k.tree = t;
                k.in.reserve(m + n - 1);
                k.in.insert(k.in.end(), fe->first.in.begin(), fe->first.in.begin() + (i - 1));
                k.in.insert(k.in.end(), ge->first.in.begin(), ge->first.in.end());
                k.in.insert(k.in.end(), fe->first.in.begin() + i, fe->first.in.end());
                k.out = fe->first.out;
                out.add(k, fe->second * ge->second);
            }
        }
    }
    return out;
}

Cochain bracket(const Cochain& f, const Cochain& g) {
    const int m = f.arity(), n = g.arity();
    Cochain out(m + n - 1, f.src_dim(), f.dst_dim());
    for (int i = 1; i <= m; ++i) {
        Cochain t = circ(f, i, g);
        if (((i - 1) * (n - 1)) % 2) t.scale(Rat(-1));
        out += t;
    }
    int outer = ((m - 1) * (n - 1)) % 2;
    for (int i = 1; i <= n; ++i) {
        Cochain t = circ(g, i, f);
        if ((outer + (i - 1) * (m - 1)) % 2 == 0) t.scale(Rat(-1));
        out += t;
    }
    return out;
}

namespace {

// Indices of the three 2-trees in the canonical enumeration of T_2.
struct TwoTrees {
    int dashv, vdash, perp;
};

TwoTrees two_trees() {
    static TwoTrees t = [] {
        PlanarTree one = PlanarTree::node({PlanarTree::leaf(), PlanarTree::leaf()});
        TwoTrees r;
        r.dashv = tree_index(PlanarTree::node({PlanarTree::leaf(), one}));
        r.vdash = tree_index(PlanarTree::node({one, PlanarTree::leaf()}));
        r.perp = tree_index(PlanarTree::node({PlanarTree::leaf(), PlanarTree::leaf(), PlanarTree::leaf()}));
        return r;
    }();
    return t;
}

const Tensor3& product_for(const TriassSpec& d, BulletKind b) {
    switch (b) {
        case BulletKind::LeftDashv: return d.dashv;
        case BulletKind::RightVdash: return d.vdash;
        default: return d.perp;
    }
}

} // namespace

Cochain pi_of_triass(const TriassSpec& d) {
    Cochain pi(2, d.dim, d.dim);
    TwoTrees tt = two_trees();
    for (int i = 0; i < d.dim; ++i)
        for (int j = 0; j < d.dim; ++j)
            for (int k = 0; k < d.dim; ++k) {
                pi.add({tt.dashv, {i, j}, k}, d.dashv.at(i, j, k));
                pi.add({tt.vdash, {i, j}, k}, d.vdash.at(i, j, k));
                pi.add({tt.perp, {i, j}, k}, d.perp.at(i, j, k));
            }
    return pi;
}

Cochain delta_triass(const TriassSpec& d, const Cochain& f) {
    const int n = f.arity();
    if (f.src_dim() != d.dim || f.dst_dim() != d.dim)
        throw std::invalid_argument("delta_triass: dimension mismatch");
    Cochain out(n + 1, d.dim, d.dim);
    const auto& trees = enumerate_trees(n + 1);
    // face index tables and bullets for T_{n+1}
    for (int t = 0; t < int(trees.size()); ++t) {
        const PlanarTree& tree = trees[t];
        // term 1: x_1 bullet_0 f(d_0 T; x_2..x_{n+1})
        {
            int ft = tree_index(face(tree, 0));
            const Tensor3& prod = product_for(d, bullet(tree, 0));
            for (const auto& [k, v] : f.coeffs()) {
                if (k.tree != ft) continue;
                for (int j1 = 0; j1 < d.dim; ++j1)
                    for (int o = 0; o < d.dim; ++o) {
                        const Rat& c = prod.at(j1, k.out, o);
                        if (c.is_zero()) continue;
                        CochainKey nk;
                        nk.tree = t;
                        nk.in.reserve(n + 1);
                        nk.in.push_back(j1);
                        nk.in.insert(nk.in.end(), k.in.begin(), k.in.end());
                        nk.out = o;
                        out.add(nk, v * c);
                    }
            }
        }
        // term 2: (-1)^{n+1} f(d_{n+1} T; x_1..x_n) bullet_{n+1} x_{n+1}
        {
            int ft = tree_index(face(tree, n + 1));
            const Tensor3& prod = product_for(d, bullet(tree, n + 1));
            Rat sign((n + 1) % 2 ? -1 : 1);
            for (const auto& [k, v] : f.coeffs()) {
                if (k.tree != ft) continue;
                for (int jl = 0; jl < d.dim; ++jl)
                    for (int o = 0; o < d.dim; ++o) {
                        const Rat& c = prod.at(k.out, jl, o);
                        if (c.is_zero()) continue;
                        CochainKey nk;
                        nk.tree = t;
                        nk.in = k.in;
                        nk.in.push_back(jl);
                        nk.out = o;
                        out.add(nk, v * c * sign);
                    }
            }
        }
        // term 3: sum_i (-1)^i f(d_i T; ..., x_i bullet_i x_{i+1}, ...)
        for (int i = 1; i <= n; ++i) {
            int ft = tree_index(face(tree, i));
            const Tensor3& prod = product_for(d, bullet(tree, i));
            Rat sign(i % 2 ? -1 : 1);
            for (const auto& [k, v] : f.coeffs()) {
                if (k.tree != ft) continue;
                for (int u = 0; u < d.dim; ++u)
                    for (int w = 0; w < d.dim; ++w) {
                        const Rat& c = prod.at(u, w, k.in[i - 1]);
                        if (c.is_zero()) continue;
                        CochainKey nk;
                        nk.tree = t;
                        nk.in.reserve(n + 1);
                        nk.in.insert(nk.in.end(), k.in.begin(), k.in.begin() + (i - 1));
                        nk.in.push_back(u);
                        nk.in.push_back(w);
                        nk.in.insert(nk.in.end(), k.in.begin() + i, k.in.end());
                        nk.out = k.out;
                        out.add(nk, v * c * sign);
                    }
            }
        }
    }
    return out;
}

Cochain pi_lambda_of(const BimodSpec& b, const Rat& lambda) {
    const int dA = b.algebra.dim, dB = b.dimB, n = dA + dB;
    TwoTrees tt = two_trees();
    Cochain pi(2, n, n);
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dA; ++k) {
                const Rat& c = b.algebra.mu.at(i, j, k);
                if (c.is_zero()) continue;
                pi.add({tt.dashv, {i, j}, k}, c);
                pi.add({tt.vdash, {i, j}, k}, c);
                pi.add({tt.perp, {i, j}, k}, c);
            }
    for (int x = 0; x < dB; ++x)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dB; ++k)
                pi.add({tt.dashv, {dA + x, j}, dA + k}, b.right.at(x, j, k));
    for (int i = 0; i < dA; ++i)
        for (int y = 0; y < dB; ++y)
            for (int k = 0; k < dB; ++k)
                pi.add({tt.vdash, {i, dA + y}, dA + k}, b.left.at(i, y, k));
    for (int x = 0; x < dB; ++x)
        for (int y = 0; y < dB; ++y)
            for (int k = 0; k < dB; ++k)
                pi.add({tt.perp, {dA + x, dA + y}, dA + k}, lambda * b.nu.at(x, y, k));
    return pi;
}

RAvgContext::RAvgContext(RAvgSpec s) : s_(std::move(s)) {
    pi_ = pi_lambda_of(s_.bimodule, s_.lambda);
}

Cochain RAvgContext::p_embedded() const {
    Cochain p(1, dim(), dim());
    for (int j = 0; j < dimB(); ++j) {
        RatVector col = s_.P.apply_basis(j);
        for (int i = 0; i < dimA(); ++i) p.add({0, {dimA() + j}, i}, col[i]);
    }
    return p;
}

Cochain RAvgContext::p_cochain() const {
    Cochain p(1, dimB(), dimA());
    for (int j = 0; j < dimB(); ++j) {
        RatVector col = s_.P.apply_basis(j);
        for (int i = 0; i < dimA(); ++i) p.add({0, {j}, i}, col[i]);
    }
    return p;
}

bool RAvgContext::in_a_part(const Cochain& f) const {
    for (const auto& [k, v] : f.coeffs()) {
        if (k.out >= dimA()) return false;
        for (int i : k.in)
            if (i < dimA()) return false;
    }
    return true;
}

Cochain RAvgContext::project_a(const Cochain& f) const {
    Cochain out(f.arity(), f.src_dim(), f.dst_dim());
    for (const auto& [k, v] : f.coeffs()) {
        if (k.out >= dimA()) continue;
        bool all_b = true;
        for (int i : k.in)
            if (i < dimA()) { all_b = false; break; }
        if (all_b) out.add(k, v);
    }
    return out;
}

Cochain RAvgContext::embed(const Cochain& f_ba) const {
    if (f_ba.src_dim() != dimB() || f_ba.dst_dim() != dimA())
        throw std::invalid_argument("embed: expected a C(B,A) cochain");
    Cochain out(f_ba.arity(), dim(), dim());
    for (const auto& [k, v] : f_ba.coeffs()) {
        CochainKey nk;
        nk.tree = k.tree;
        for (int i : k.in) nk.in.push_back(dimA() + i);
        nk.out = k.out;
        out.add(nk, v);
    }
    return out;
}

Cochain RAvgContext::restrict_ba(const Cochain& f) const {
    Cochain out(f.arity(), dimB(), dimA());
    for (const auto& [k, v] : f.coeffs()) {
        if (k.out >= dimA()) continue;
        bool all_b = true;
        for (int i : k.in)
            if (i < dimA()) { all_b = false; break; }
        if (!all_b) continue;
        CochainKey nk;
        nk.tree = k.tree;
        for (int i : k.in) nk.in.push_back(i - dimA());
        nk.out = k.out;
        out.add(nk, v);
    }
    return out;
}

Cochain RAvgContext::derived_bracket(const Cochain& f_ba, const Cochain& g_ba) const {
    Cochain inner = bracket(pi_, embed(f_ba));
    Cochain full = bracket(inner, embed(g_ba));
    Cochain out = restrict_ba(full);
    if (f_ba.arity() % 2) out.scale(Rat(-1));  // (-1)^m for f in C^m(B,A)
    return out;
}

Cochain RAvgContext::d_operator(const Cochain& f_ba) const {
    if (f_ba.src_dim() != dimB() || f_ba.dst_dim() != dimA())
        throw std::invalid_argument("d_operator: expected a C(B,A) cochain");
    const int n = f_ba.arity();
    Cochain out(n + 1, dimB(), dimA());
    const auto& trees = enumerate_trees(n + 1);
    TwoTrees tt = two_trees();
    const Tensor3& nu = s_.bimodule.nu;
    for (int t = 0; t < int(trees.size()); ++t) {
        for (int i = 1; i <= n; ++i) {
            const RTable& rt = r_table(n, i, 2);
            if (rt.slot[t] != tt.perp) continue;  // pure-B pi_lambda survives only on the corolla
            int ft = tree_index(face(trees[t], i));
            int sgn = (n - 1 + i - 1) % 2;
            for (const auto& [k, v] : f_ba.coeffs()) {
                if (k.tree != ft) continue;
                for (int u = 0; u < dimB(); ++u)
                    for (int w = 0; w < dimB(); ++w) {
                        const Rat& c = nu.at(u, w, k.in[i - 1]);
                        if (c.is_zero()) continue;
                        CochainKey nk;
                        nk.tree = t;
                        nk.in.reserve(n + 1);
                        nk.in.insert(nk.in.end(), k.in.begin(), k.in.begin() + (i - 1));
                        nk.in.push_back(u);
                        nk.in.push_back(w);
                        nk.in.insert(nk.in.end(), k.in.begin() + i, k.in.end());
                        nk.out = k.out;
                        Rat coeff = v * c * s_.lambda;
                        if (sgn) coeff = -coeff;
                        out.add(nk, coeff);
                    }
            }
        }
    }
    return out;
}

Cochain RAvgContext::mc_operator() const {
    Cochain p = p_cochain();
    Cochain defect = d_operator(p);
    Cochain dbl = derived_bracket(p, p);
    dbl.scale(Rat(1, 2));
    defect += dbl;
    return defect;
}

Cochain RAvgContext::d_p(const Cochain& f_ba) const {
    Cochain out = d_operator(f_ba);
    out += derived_bracket(p_cochain(), f_ba);
    return out;
}

} // namespace triavg

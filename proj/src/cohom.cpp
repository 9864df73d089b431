#include "triavg/cohom.hpp"

#include <algorithm>
#include <stdexcept>

namespace triavg {

void NAryMap::add(const MKey& k, const Rat& v) {
    if (v.is_zero()) return;
    auto it = c_.find(k);
    if (it == c_.end()) {
        c_.emplace(k, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
}

Rat NAryMap::coeff(const MKey& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Rat() : it->second;
}

NAryMap& NAryMap::operator+=(const NAryMap& o) {
    for (const auto& [k, v] : o.c_) add(k, v);
    return *this;
}

NAryMap& NAryMap::operator-=(const NAryMap& o) {
    for (const auto& [k, v] : o.c_) add(k, -v);
    return *this;
}

NAryMap& NAryMap::scale(const Rat& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& [k, v] : c_) v *= s;
    return *this;
}

NAryMap hochschild_delta(const Tensor3& product, const NAryMap& f) {
    const int n = f.arity(), d = f.dim();
    NAryMap out(n + 1, d);
    for (const auto& [k, v] : f.coeffs()) {
        // v_1 . f(v_2 .. v_{n+1})
        for (int j = 0; j < d; ++j)
            for (int o = 0; o < d; ++o) {
                const Rat& c = product.at(j, k.out, o);
                if (c.is_zero()) continue;
                MKey nk;
                nk.in.reserve(n + 1);
                nk.in.push_back(j);
                nk.in.insert(nk.in.end(), k.in.begin(), k.in.end());
                nk.out = o;
                out.add(nk, v * c);
            }
        // (-1)^{n+1} f(v_1 .. v_n) . v_{n+1}
        Rat end_sign((n + 1) % 2 ? -1 : 1);
        for (int j = 0; j < d; ++j)
            for (int o = 0; o < d; ++o) {
                const Rat& c = product.at(k.out, j, o);
                if (c.is_zero()) continue;
                MKey nk;
                nk.in = k.in;
                nk.in.push_back(j);
                nk.out = o;
                out.add(nk, v * c * end_sign);
            }
        // sum_i (-1)^i f(v_1 .. v_i v_{i+1} .. v_{n+1})
        for (int i = 1; i <= n; ++i) {
            Rat sign(i % 2 ? -1 : 1);
            for (int u = 0; u < d; ++u)
                for (int w = 0; w < d; ++w) {
                    const Rat& c = product.at(u, w, k.in[i - 1]);
                    if (c.is_zero()) continue;
                    MKey nk;
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
    return out;
}

namespace {

// B-slot positions (0-based) given by the grafting joints of a tree, plus
// the factor count k.
struct JointInfo {
    std::vector<bool> is_joint;  // length n
    int factors;
};

JointInfo joints_of(const PlanarTree& t) {
    const int n = t.arity();
    JointInfo j;
    j.is_joint.assign(n, false);
    auto parts = decompose(t);
    j.factors = int(parts.size());
    int pos = 0;
    for (std::size_t f = 0; f + 1 < parts.size(); ++f) {
        pos += parts[f].arity() + 1;
        j.is_joint[pos - 1] = true;  // 0-based slot
    }
    return j;
}

} // namespace

CohomologyContext::CohomologyContext(RAvgSpec s) : ctx_(std::move(s)) {
    const int dA = dimA(), dB = dimB(), n = dimE();
    const BimodSpec& b = ctx_.spec().bimodule;
    ext_ = Tensor3(n, n, n);
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dA; ++k) ext_.at(i, j, k) = b.algebra.mu.at(i, j, k);
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dB; ++k) ext_.at(i, dA + j, dA + k) = b.left.at(i, j, k);
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dB; ++k) ext_.at(dA + i, j, dA + k) = b.right.at(i, j, k);
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dB; ++k) ext_.at(dA + i, dA + j, dA + k) = b.nu.at(i, j, k);
}

bool CohomologyContext::assact_member(const NAryMap& m) const {
    const int dA = dimA();
    for (const auto& [k, v] : m.coeffs()) {
        bool pure_a = true;
        for (int i : k.in)
            if (i >= dA) { pure_a = false; break; }
        if (pure_a != (k.out < dA)) return false;
    }
    return true;
}

NAryMap CohomologyContext::delta_assact(const NAryMap& m) const {
    return hochschild_delta(ext_, m);
}

Cochain CohomologyContext::theta_p(const NAryMap& m) const {
    const int n = m.arity(), dA = dimA(), dB = dimB();
    const LinearOp& P = ctx_.spec().P;
    Cochain out(n, dB, dA);
    const auto& trees = enumerate_trees(n);
    Rat front_sign(n % 2 ? -1 : 1);

    // f(P x_1, ..., P x_n): tree independent
    Cochain fterm(n, dB, dA);
    for (const auto& [k, v] : m.coeffs()) {
        bool pure_a = true;
        for (int i : k.in)
            if (i >= dA) { pure_a = false; break; }
        if (!pure_a) continue;
        std::vector<int> js(n, 0);
        while (true) {
            Rat c = v;
            for (int s = 0; s < n && !c.is_zero(); ++s) c *= P.matrix.at(k.in[s], js[s]);
            if (!c.is_zero())
                for (int t = 0; t < int(trees.size()); ++t) out.add({t, js, k.out}, c * front_sign);
            int s = n;
            while (s > 0) {
                --s;
                if (++js[s] < dB) break;
                js[s] = 0;
                if (s == 0) { s = -1; break; }
            }
            if (s < 0) break;
        }
    }

    // - lambda^{k-2} P((g+h)(P x at non-joints, x at joints)) per tree
    for (int t = 0; t < int(trees.size()); ++t) {
        JointInfo ji = joints_of(trees[t]);
        Rat scale = ctx_.spec().lambda.pow(ji.factors - 2);
        for (const auto& [k, v] : m.coeffs()) {
            if (k.out < dA) continue;  // needs the B-valued block
            bool match = true;
            for (int s = 0; s < n; ++s)
                if ((k.in[s] >= dA) != ji.is_joint[s]) { match = false; break; }
            if (!match) continue;
            RatVector pout = P.apply_basis(k.out - dA);
            // contract P over the non-joint slots
            std::vector<int> free_slots;
            for (int s = 0; s < n; ++s)
                if (!ji.is_joint[s]) free_slots.push_back(s);
            std::vector<int> js(free_slots.size(), 0);
            while (true) {
                Rat c = v * scale;
                std::vector<int> in(n);
                for (int s = 0; s < n; ++s)
                    if (ji.is_joint[s]) in[s] = k.in[s] - dA;
                for (std::size_t q = 0; q < free_slots.size() && !c.is_zero(); ++q) {
                    in[free_slots[q]] = js[q];
                    c *= P.matrix.at(k.in[free_slots[q]], js[q]);
                }
                if (!c.is_zero())
                    for (int o = 0; o < dA; ++o)
                        if (!pout[o].is_zero()) out.add({t, in, o}, -front_sign * c * pout[o]);
                if (free_slots.empty()) break;
                std::size_t q = free_slots.size();
                bool done = false;
                while (q > 0) {
                    --q;
                    if (++js[q] < dB) break;
                    js[q] = 0;
                    if (q == 0) { done = true; break; }
                }
                if (done) break;
            }
        }
    }
    return out;
}

Cochain CohomologyContext::embed_maps(const NAryMap& m) const {
    const int n = m.arity(), dA = dimA();
    Cochain out(n, dimE(), dimE());
    const auto& trees = enumerate_trees(n);
    for (int t = 0; t < int(trees.size()); ++t) {
        JointInfo ji = joints_of(trees[t]);
        Rat scale = ctx_.spec().lambda.pow(ji.factors - 2);
        for (const auto& [k, v] : m.coeffs()) {
            bool pure_a = true;
            for (int i : k.in)
                if (i >= dA) { pure_a = false; break; }
            if (pure_a) {
                out.add({t, k.in, k.out}, v);  // f block appears on every tree
            } else {
                bool match = true;
                for (int s = 0; s < n; ++s)
                    if ((k.in[s] >= dA) != ji.is_joint[s]) { match = false; break; }
                if (match) out.add({t, k.in, k.out}, v * scale);
            }
        }
    }
    return out;
}

NAryMap CohomologyContext::unembed_maps(const Cochain& h) const {
    const int n = h.arity(), dA = dimA();
    if (h.src_dim() != dimE() || h.dst_dim() != dimE())
        throw std::invalid_argument("unembed_maps: wrong carrier");
    NAryMap m(n, dimE());
    const auto& trees = enumerate_trees(n);
    std::vector<JointInfo> ji;
    ji.reserve(trees.size());
    for (const auto& t : trees) ji.push_back(joints_of(t));

    for (const auto& [k, v] : h.coeffs()) {
        bool pure_a = k.out < dA;
        for (int i : k.in)
            if (i >= dA && pure_a)
                throw std::domain_error("unembed_maps: A-valued key with B input");
        if (pure_a) {
            for (int i : k.in)
                if (i >= dA) throw std::domain_error("unembed_maps: A-valued key with B input");
        } else {
            // B-valued: slots must be B exactly at the joints of this tree
            for (int s = 0; s < n; ++s)
                if ((k.in[s] >= dA) != ji[k.tree].is_joint[s])
                    throw std::domain_error("unembed_maps: slot pattern off the joint set");
        }
    }
    // extract from tree 0 for the f block, per-pattern canonical trees for g/h
    for (const auto& [k, v] : h.coeffs()) {
        if (k.out < dA) {
            if (k.tree == 0) m.add({k.in, k.out}, v);
        } else {
            Rat scale = ctx_.spec().lambda.pow(ji[k.tree].factors - 2);
            if (scale.is_zero()) throw std::domain_error("unembed_maps: zero weight scalar");
            Rat base = v / scale;
            MKey mk{k.in, k.out};
            Rat existing = m.coeff(mk);
            if (existing.is_zero())
                m.add(mk, base);
            else if (existing != base)
                throw std::domain_error("unembed_maps: inconsistent values across trees");
        }
    }
    // consistency: re-embedding must reproduce h exactly
    if (!(embed_maps(m) == h))
        throw std::domain_error("unembed_maps: cochain is not in the embedded image");
    return m;
}

RAvgCochain CohomologyContext::delta_ravg(const RAvgCochain& c) const {
    const int n = c.degree;
    if (n < 1) throw std::invalid_argument("delta_ravg: degree must be >= 1");
    RAvgCochain out;
    out.degree = n + 1;
    if (n == 1) {
        // through the twisted l_1: delta(f,g) = (+[pi, F] unembedded, -p [F, P])
        Cochain F = embed_maps(c.maps);
        Cochain h_part = bracket(ctx_.pi_lambda(), F);
        out.maps = unembed_maps(h_part);
        Cochain a_part = ctx_.restrict_ba(bracket(F, ctx_.p_embedded()));
        a_part.scale(Rat(-1));
        out.gamma = a_part;
        return out;
    }
    out.maps = delta_assact(c.maps);
    Cochain g = ctx_.d_p(c.gamma);
    if ((n - 1) % 2) g.scale(Rat(-1));
    g += theta_p(c.maps);
    out.gamma = g;
    return out;
}

// ---- bases -------------------------------------------------------------

const CohomologyContext::Basis& CohomologyContext::assact_basis(int n) const {
    auto it = assact_cache_.find(n);
    if (it != assact_cache_.end()) return it->second;
    Basis b;
    const int dA = dimA(), dE = dimE();
    std::vector<int> in(n, 0);
    while (true) {
        bool pure_a = true;
        for (int i : in)
            if (i >= dA) { pure_a = false; break; }
        int lo = pure_a ? 0 : dA, hi = pure_a ? dA : dE;
        for (int o = lo; o < hi; ++o) {
            RAvgCochain c;
            c.degree = n;
            c.maps = NAryMap(n, dE);
            c.maps.add({in, o}, Rat(1));
            b.elems.push_back(std::move(c));
        }
        int s = n;
        bool done = false;
        while (s > 0) {
            --s;
            if (++in[s] < dE) break;
            in[s] = 0;
            if (s == 0) { done = true; break; }
        }
        if (done || n == 0) break;
    }
    return assact_cache_.emplace(n, std::move(b)).first->second;
}

const CohomologyContext::Basis& CohomologyContext::operator_basis(int n) const {
    auto it = op_cache_.find(n);
    if (it != op_cache_.end()) return it->second;
    Basis b;
    const int dA = dimA(), dB = dimB();
    const int nt = int(enumerate_trees(n).size());
    for (int t = 0; t < nt; ++t) {
        std::vector<int> in(n, 0);
        while (true) {
            for (int o = 0; o < dA; ++o) {
                RAvgCochain c;
                c.degree = n;
                c.gamma = Cochain(n, dB, dA);
                c.gamma.add({t, in, o}, Rat(1));
                b.elems.push_back(std::move(c));
            }
            int s = n;
            bool done = false;
            while (s > 0) {
                --s;
                if (++in[s] < dB) break;
                in[s] = 0;
                if (s == 0) { done = true; break; }
            }
            if (done) break;
        }
    }
    return op_cache_.emplace(n, std::move(b)).first->second;
}

const CohomologyContext::Basis& CohomologyContext::ravg_basis(int n) const {
    auto it = ravg_cache_.find(n);
    if (it != ravg_cache_.end()) return it->second;
    Basis b = assact_basis(n);
    if (n >= 2) {
        for (const auto& g : operator_basis(n - 1).elems) {
            RAvgCochain c;
            c.degree = n;
            c.maps = NAryMap(n, dimE());
            c.gamma = g.gamma;
            b.elems.push_back(std::move(c));
        }
    }
    for (auto& e : b.elems) {
        e.degree = n;
        if (e.gamma.arity() == 0 && n >= 2) e.gamma = Cochain(n - 1, dimB(), dimA());
        if (e.maps.arity() == 0) e.maps = NAryMap(n, dimE());
    }
    return ravg_cache_.emplace(n, std::move(b)).first->second;
}

const CohomologyContext::Basis& CohomologyContext::avg_basis(int n) const {
    auto it = avg_cache_.find(n);
    if (it != avg_cache_.end()) return it->second;
    const int dA = dimA();
    Basis b;
    std::vector<int> in(n, 0);
    while (true) {
        for (int o = 0; o < dA; ++o) {
            RAvgCochain c;
            c.degree = n;
            c.maps = NAryMap(n, dA);  // Avg flavor: carrier is A alone
            c.maps.add({in, o}, Rat(1));
            b.elems.push_back(std::move(c));
        }
        int s = n;
        bool done = false;
        while (s > 0) {
            --s;
            if (++in[s] < dA) break;
            in[s] = 0;
            if (s == 0) { done = true; break; }
        }
        if (done) break;
    }
    if (n >= 2)
        for (const auto& g : operator_basis(n - 1).elems) {
            RAvgCochain c;
            c.degree = n;
            c.maps = NAryMap(n, dA);
            c.gamma = g.gamma;
            b.elems.push_back(std::move(c));
        }
    return avg_cache_.emplace(n, std::move(b)).first->second;
}

RatVector CohomologyContext::assact_coords(const NAryMap& m, int n) const {
    const Basis& b = assact_basis(n);
    std::map<MKey, std::size_t> index;
    for (std::size_t i = 0; i < b.size(); ++i)
        index[b.elems[i].maps.coeffs().begin()->first] = i;
    RatVector v(b.size());
    for (const auto& [k, val] : m.coeffs()) {
        auto it = index.find(k);
        if (it == index.end()) throw std::logic_error("assact_coords: key outside the space");
        v[it->second] = val;
    }
    return v;
}

RatVector CohomologyContext::operator_coords(const Cochain& f, int n) const {
    const Basis& b = operator_basis(n);
    std::map<CochainKey, std::size_t> index;
    for (std::size_t i = 0; i < b.size(); ++i)
        index[b.elems[i].gamma.coeffs().begin()->first] = i;
    RatVector v(b.size());
    for (const auto& [k, val] : f.coeffs()) {
        auto it = index.find(k);
        if (it == index.end()) throw std::logic_error("operator_coords: key outside the space");
        v[it->second] = val;
    }
    return v;
}

RatVector CohomologyContext::ravg_coords(const RAvgCochain& c, int n) const {
    RatVector v = assact_coords(c.maps, n);
    if (n >= 2) {
        RatVector g = operator_coords(c.gamma, n - 1);
        v.insert(v.end(), g.begin(), g.end());
    }
    return v;
}

RatMatrix CohomologyContext::matrix_assact(int n) const {
    const Basis& dom = assact_basis(n);
    const Basis& cod = assact_basis(n + 1);
    RatMatrix m(cod.size(), dom.size());
    for (std::size_t j = 0; j < dom.size(); ++j) {
        RatVector col = assact_coords(delta_assact(dom.elems[j].maps), n + 1);
        for (std::size_t i = 0; i < cod.size(); ++i) m.at(i, j) = col[i];
    }
    return m;
}

RatMatrix CohomologyContext::matrix_ravg(int n) const {
    const Basis& dom = ravg_basis(n);
    const Basis& cod = ravg_basis(n + 1);
    RatMatrix m(cod.size(), dom.size());
    for (std::size_t j = 0; j < dom.size(); ++j) {
        RatVector col = ravg_coords(delta_ravg(dom.elems[j]), n + 1);
        for (std::size_t i = 0; i < cod.size(); ++i) m.at(i, j) = col[i];
    }
    return m;
}

RatMatrix CohomologyContext::matrix_operator(int n) const {
    const Basis& dom = operator_basis(n);
    const Basis& cod = operator_basis(n + 1);
    RatMatrix m(cod.size(), dom.size());
    for (std::size_t j = 0; j < dom.size(); ++j) {
        RatVector col = operator_coords(ctx_.d_p(dom.elems[j].gamma), n + 1);
        for (std::size_t i = 0; i < cod.size(); ++i) m.at(i, j) = col[i];
    }
    return m;
}

RAvgCochain CohomologyContext::embed_avg(const NAryMap& f_pure, const Cochain& gamma) const {
    const int dA = dimA();
    const BimodSpec& b = ctx_.spec().bimodule;
    if (dimB() != dA || !(b.nu == b.algebra.mu) || !(b.left == b.algebra.mu) ||
        !(b.right == b.algebra.mu))
        throw std::invalid_argument("embed_avg: bimodule is not the adjoint of A");
    const int n = f_pure.arity();
    RAvgCochain c;
    c.degree = n;
    c.maps = NAryMap(n, dimE());
    for (const auto& [k, v] : f_pure.coeffs()) {
        for (int mask = 0; mask < (1 << n); ++mask) {
            MKey nk;
            nk.in.resize(n);
            for (int s = 0; s < n; ++s) nk.in[s] = k.in[s] + ((mask >> s) & 1 ? dA : 0);
            nk.out = mask == 0 ? k.out : k.out + dA;
            c.maps.add(nk, v);
        }
    }
    c.gamma = gamma;
    return c;
}

std::pair<NAryMap, Cochain> CohomologyContext::unembed_avg(const RAvgCochain& c) const {
    const int dA = dimA(), n = c.degree;
    NAryMap f(n, dA);
    for (const auto& [k, v] : c.maps.coeffs()) {
        bool pure_a = true;
        for (int i : k.in)
            if (i >= dA) { pure_a = false; break; }
        if (pure_a) f.add(k, v);
    }
    RAvgCochain again = embed_avg(f, c.gamma);
    if (!(again.maps == c.maps))
        throw std::domain_error("unembed_avg: cochain leaves the averaging subcomplex");
    return {f, c.gamma};
}

RatMatrix CohomologyContext::matrix_avg(int n) const {
    const Basis& dom = avg_basis(n);
    const Basis& cod = avg_basis(n + 1);
    // coordinates of an Avg cochain: pure f keys then gamma keys
    auto coords = [&](const NAryMap& f, const Cochain& g, int deg) {
        const Basis& bs = avg_basis(deg);
        std::map<MKey, std::size_t> index;
        std::map<CochainKey, std::size_t> gindex;
        for (std::size_t i = 0; i < bs.size(); ++i) {
            if (!bs.elems[i].maps.is_zero())
                index[bs.elems[i].maps.coeffs().begin()->first] = i;
            else
                gindex[bs.elems[i].gamma.coeffs().begin()->first] = i;
        }
        RatVector v(bs.size());
        for (const auto& [k, val] : f.coeffs()) v[index.at(k)] = val;
        for (const auto& [k, val] : g.coeffs()) v[gindex.at(k)] = val;
        return v;
    };
    RatMatrix m(cod.size(), dom.size());
    for (std::size_t j = 0; j < dom.size(); ++j) {
        RAvgCochain big = embed_avg(dom.elems[j].maps, dom.elems[j].gamma);
        big.degree = n;
        if (n >= 2 && big.gamma.arity() == 0) big.gamma = Cochain(n - 1, dimB(), dimA());
        auto [f, g] = unembed_avg(delta_ravg(big));
        RatVector col = coords(f, g, n + 1);
        for (std::size_t i = 0; i < cod.size(); ++i) m.at(i, j) = col[i];
    }
    return m;
}

// ---- cohomology reports -------------------------------------------------

namespace {

std::vector<RatVector> matrix_columns(const RatMatrix& m) {
    std::vector<RatVector> cols;
    for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.col(c));
    return cols;
}

BettiReport betti_from(const RatMatrix& delta_n, const std::vector<RatVector>& image_prev,
                       int degree) {
    BettiReport r;
    r.degree = degree;
    r.dim_cochains = delta_n.cols();
    std::vector<RatVector> ker = kernel_basis(delta_n);
    r.dim_kernel = ker.size();
    QuotientBasis q = cokernel_quotient(image_prev, ker, delta_n.cols());
    r.dim_image_prev = r.dim_kernel - q.dim;
    r.dim_h = q.dim;
    r.representatives = q.representatives;
    return r;
}

} // namespace

std::vector<CochainKey> triass_basis_keys(int dim, int n) {
    std::vector<CochainKey> keys;
    const int nt = int(enumerate_trees(n).size());
    for (int t = 0; t < nt; ++t) {
        std::vector<int> in(n, 0);
        while (true) {
            for (int o = 0; o < dim; ++o) keys.push_back({t, in, o});
            int s = n;
            bool done = false;
            while (s > 0) {
                --s;
                if (++in[s] < dim) break;
                in[s] = 0;
                if (s == 0) { done = true; break; }
            }
            if (done) break;
        }
    }
    return keys;
}

BettiReport triass_cohomology(const TriassSpec& d, int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("triass_cohomology: degree out of range");
    auto basis_of = [&](int deg) { return triass_basis_keys(d.dim, deg); };
    auto coords = [&](const Cochain& f, const std::vector<CochainKey>& keys) {
        std::map<CochainKey, std::size_t> index;
        for (std::size_t i = 0; i < keys.size(); ++i) index[keys[i]] = i;
        RatVector v(keys.size());
        for (const auto& [k, val] : f.coeffs()) v[index.at(k)] = val;
        return v;
    };
    auto matrix_of = [&](int deg) {
        auto dom = basis_of(deg);
        auto cod = basis_of(deg + 1);
        RatMatrix m(cod.size(), dom.size());
        for (std::size_t j = 0; j < dom.size(); ++j) {
            Cochain f(deg, d.dim, d.dim);
            f.add(dom[j], Rat(1));
            RatVector col = coords(delta_triass(d, f), cod);
            for (std::size_t i = 0; i < cod.size(); ++i) m.at(i, j) = col[i];
        }
        return m;
    };
    RatMatrix dn = matrix_of(n);
    std::vector<RatVector> image_prev;
    if (n > 1) {
        RatMatrix prev = matrix_of(n - 1);
        image_prev = matrix_columns(prev);
    }
    return betti_from(dn, image_prev, n);
}

BettiReport cohomology(const CohomologyContext& c, Theory t, int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("cohomology: degree out of range");
    auto matrix_of = [&](int deg) {
        switch (t) {
            case Theory::RAvg: return c.matrix_ravg(deg);
            case Theory::AssAct: return c.matrix_assact(deg);
            case Theory::Operator: return c.matrix_operator(deg);
            case Theory::Avg: return c.matrix_avg(deg);
            default: throw std::invalid_argument("cohomology: use triass_cohomology");
        }
    };
    RatMatrix dn = matrix_of(n);
    std::vector<RatVector> image_prev;
    if (n > 1) image_prev = matrix_columns(matrix_of(n - 1));
    return betti_from(dn, image_prev, n);
}

// ---- long exact sequence ------------------------------------------------

namespace {

// Class coordinates of a cocycle: solve [reps | image] x = z.
bool class_coords(const std::vector<RatVector>& reps, const std::vector<RatVector>& image,
                  const RatVector& z, RatVector& h_coords) {
    std::size_t dim = z.size();
    RatMatrix m(dim, reps.size() + image.size());
    for (std::size_t c = 0; c < reps.size(); ++c)
        for (std::size_t r = 0; r < dim; ++r) m.at(r, c) = reps[c][r];
    for (std::size_t c = 0; c < image.size(); ++c)
        for (std::size_t r = 0; r < dim; ++r) m.at(r, reps.size() + c) = image[c][r];
    RatVector x;
    if (!solve(m, z, x)) return false;
    h_coords.assign(x.begin(), x.begin() + reps.size());
    return true;
}

} // namespace

LesReport long_exact_check(const CohomologyContext& c, int max_degree) {
    LesReport rep;
    // Betti data for all three theories over the needed window
    std::map<int, BettiReport> h_op, h_ravg, h_ass;
    std::map<int, std::vector<RatVector>> im_op, im_ravg, im_ass;
    std::map<int, RatMatrix> m_ravg;
    for (int n = 1; n <= max_degree; ++n) {
        h_op[n] = cohomology(c, Theory::Operator, n);
        h_ass[n] = cohomology(c, Theory::AssAct, n);
    }
    for (int n = 1; n <= max_degree + 1; ++n) h_ravg[n] = cohomology(c, Theory::RAvg, n);
    for (int n = 1; n <= max_degree; ++n) {
        im_op[n + 1] = matrix_columns(c.matrix_operator(n));
        im_ass[n + 1] = matrix_columns(c.matrix_assact(n));
        im_ravg[n + 1] = matrix_columns(c.matrix_ravg(n));
    }
    im_op[1] = {};
    im_ass[1] = {};
    im_ravg[1] = {};
    im_ravg[max_degree + 1] = matrix_columns(c.matrix_ravg(max_degree));

    // cochain-level maps returning coordinates in the codomain basis
    auto iota = [&](const RatVector& gamma_coords, int n) {
        // H^{n-1}_P -> H^n_rAvg: gamma basis sits at the tail of ravg basis
        std::size_t head = c.assact_basis(n).size();
        RatVector v(head + gamma_coords.size());
        for (std::size_t i = 0; i < gamma_coords.size(); ++i) v[head + i] = gamma_coords[i];
        return v;
    };
    auto tau = [&](const RatVector& ravg_coords, int n) {
        std::size_t head = c.assact_basis(n).size();
        return RatVector(ravg_coords.begin(), ravg_coords.begin() + head);
    };
    auto connecting = [&](const RatVector& ass_coords, int n) {
        // theta_P of the (f,g,h) block, coordinates in operator basis at n
        const auto& basis = c.assact_basis(n);
        NAryMap m(n, c.dimE());
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (!ass_coords[i].is_zero()) {
                NAryMap term = basis.elems[i].maps;
                term.scale(ass_coords[i]);
                m += term;
            }
        return c.operator_coords(c.theta_p(m), n);
    };

    // induced maps on cohomology as matrices
    auto induced = [&](const std::vector<RatVector>& dom_reps, auto&& cochain_map,
                       const std::vector<RatVector>& cod_reps,
                       const std::vector<RatVector>& cod_image) {
        RatMatrix m(cod_reps.size(), dom_reps.size());
        for (std::size_t j = 0; j < dom_reps.size(); ++j) {
            RatVector img = cochain_map(dom_reps[j]);
            RatVector hc;
            if (!class_coords(cod_reps, cod_image, img, hc))
                throw std::logic_error("long_exact_check: image is not a cocycle class");
            for (std::size_t i = 0; i < cod_reps.size(); ++i) m.at(i, j) = hc[i];
        }
        return m;
    };

    for (int n = 1; n <= max_degree; ++n) {
        // maps around the three nodes at level n
        auto iota_n = induced(
            n >= 2 ? h_op[n - 1].representatives : std::vector<RatVector>{},
            [&](const RatVector& g) { return iota(g, n); }, h_ravg[n].representatives,
            im_ravg[n]);
        auto tau_n = induced(
            h_ravg[n].representatives, [&](const RatVector& v) { return tau(v, n); },
            h_ass[n].representatives, im_ass[n]);
        auto conn_n = induced(
            h_ass[n].representatives, [&](const RatVector& v) { return connecting(v, n); },
            h_op[n].representatives, im_op[n]);
        auto iota_n1 = induced(
            h_op[n].representatives, [&](const RatVector& g) { return iota(g, n + 1); },
            h_ravg[n + 1].representatives, im_ravg[n + 1]);

        auto node = [&](std::string name, const RatMatrix& in, const RatMatrix& out,
                        std::size_t dim_h) {
            std::size_t rank_in = rank(in);
            std::size_t ker_out = out.cols() - rank(out);
            bool composite_zero = out.mul(in).is_zero();
            rep.nodes.push_back({std::move(name), dim_h, rank_in, ker_out,
                                 composite_zero && rank_in == ker_out});
        };
        node("H^" + std::to_string(n) + "_rAvg", iota_n, tau_n, h_ravg[n].dim_h);
        node("H^" + std::to_string(n) + "_AssAct", tau_n, conn_n, h_ass[n].dim_h);
        node("H^" + std::to_string(n) + "_P", conn_n, iota_n1, h_op[n].dim_h);
    }
    return rep;
}

// ---- deformations --------------------------------------------------------

namespace {

// dual numbers over vectors: value + t * deriv
struct DualVec {
    RatVector v0, v1;
};

DualVec dual_apply(const Tensor3& t0, const Tensor3& t1, const DualVec& x, const DualVec& y) {
    DualVec out;
    out.v0 = t0.apply(x.v0, y.v0);
    out.v1 = t0.apply(x.v0, y.v1);
    RatVector b = t0.apply(x.v1, y.v0);
    RatVector c = t1.apply(x.v0, y.v0);
    for (std::size_t i = 0; i < out.v1.size(); ++i) out.v1[i] += b[i] + c[i];
    return out;
}

DualVec dual_op(const LinearOp& p0, const LinearOp& p1, const DualVec& x) {
    DualVec out;
    out.v0 = p0.apply(x.v0);
    out.v1 = p0.apply(x.v1);
    RatVector b = p1.apply(x.v0);
    for (std::size_t i = 0; i < out.v1.size(); ++i) out.v1[i] += b[i];
    return out;
}

bool dual_eq(const DualVec& a, const DualVec& b) { return a.v0 == b.v0 && a.v1 == b.v1; }

std::string dual_str(const DualVec& a) { return vec_str(a.v0) + "+t" + vec_str(a.v1); }

} // namespace

InfinitesimalReport check_infinitesimal(const CohomologyContext& c, const Direction& d) {
    const RAvgSpec& s = c.ravg().spec();
    const int dA = c.dimA(), dB = c.dimB();
    InfinitesimalReport out;
    Report& rep = out.axiom_failures;

    auto eA = [&](int i) {
        DualVec v{RatVector(dA), RatVector(dA)};
        v.v0[i] = Rat(1);
        return v;
    };
    auto eB = [&](int i) {
        DualVec v{RatVector(dB), RatVector(dB)};
        v.v0[i] = Rat(1);
        return v;
    };
    auto mu = [&](const DualVec& x, const DualVec& y) {
        return dual_apply(s.bimodule.algebra.mu, d.mu1, x, y);
    };
    auto nu = [&](const DualVec& x, const DualVec& y) { return dual_apply(s.bimodule.nu, d.nu1, x, y); };
    auto la = [&](const DualVec& x, const DualVec& y) { return dual_apply(s.bimodule.left, d.l1, x, y); };
    auto ra = [&](const DualVec& x, const DualVec& y) { return dual_apply(s.bimodule.right, d.r1, x, y); };
    auto P = [&](const DualVec& x) { return dual_op(s.P, d.p1, x); };

    auto require = [&](const char* tag, std::vector<int> tup, const DualVec& l, const DualVec& r) {
        if (!dual_eq(l, r)) rep.add(tag, std::move(tup), dual_str(l), dual_str(r));
    };

    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dA; ++k)
                require("t2:assocA", {i, j, k}, mu(mu(eA(i), eA(j)), eA(k)),
                        mu(eA(i), mu(eA(j), eA(k))));
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dB; ++k)
                require("t2:assocB", {i, j, k}, nu(nu(eB(i), eB(j)), eB(k)),
                        nu(eB(i), nu(eB(j), eB(k))));
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dB; ++k)
                require("t2:bm1", {i, j, k}, la(mu(eA(i), eA(j)), eB(k)),
                        la(eA(i), la(eA(j), eB(k))));
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dA; ++k)
                require("t2:bm2", {i, j, k}, ra(la(eA(i), eB(j)), eA(k)),
                        la(eA(i), ra(eB(j), eA(k))));
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dA; ++k)
                require("t2:bm3", {i, j, k}, ra(ra(eB(i), eA(j)), eA(k)),
                        ra(eB(i), mu(eA(j), eA(k))));
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dA; ++k)
                require("t2:bm4", {i, j, k}, ra(nu(eB(i), eB(j)), eA(k)),
                        nu(eB(i), ra(eB(j), eA(k))));
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dB; ++k)
                require("t2:bm5", {i, j, k}, nu(ra(eB(i), eA(j)), eB(k)),
                        nu(eB(i), la(eA(j), eB(k))));
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dB; ++k)
                require("t2:bm6", {i, j, k}, nu(la(eA(i), eB(j)), eB(k)),
                        la(eA(i), nu(eB(j), eB(k))));
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dB; ++j) {
            DualVec lhs = mu(P(eB(i)), P(eB(j)));
            require("t2:avg1", {i, j}, lhs, P(la(P(eB(i)), eB(j))));
            require("t2:avg2", {i, j}, lhs, P(ra(eB(i), P(eB(j)))));
            DualVec w = P(nu(eB(i), eB(j)));
            for (auto& x : w.v0) x *= s.lambda;
            for (auto& x : w.v1) x *= s.lambda;
            require("t2:avg3", {i, j}, lhs, w);
        }

    out.deformation_mod_t2 = rep.ok();
    RAvgCochain cc = direction_to_cochain(c, d);
    RAvgCochain dd = c.delta_ravg(cc);
    out.is_cocycle = dd.maps.is_zero() && dd.gamma.is_zero();
    return out;
}

RAvgCochain direction_to_cochain(const CohomologyContext& c, const Direction& d) {
    const int dA = c.dimA(), dB = c.dimB();
    RAvgCochain out;
    out.degree = 2;
    out.maps = NAryMap(2, c.dimE());
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dA; ++k) out.maps.add({{i, j}, k}, d.mu1.at(i, j, k));
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dB; ++k)
                out.maps.add({{dA + i, dA + j}, dA + k}, d.nu1.at(i, j, k));
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dB; ++k) out.maps.add({{i, dA + j}, dA + k}, d.l1.at(i, j, k));
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dB; ++k) out.maps.add({{dA + i, j}, dA + k}, d.r1.at(i, j, k));
    out.gamma = Cochain(1, dB, dA);
    for (int j = 0; j < dB; ++j) {
        RatVector col = d.p1.apply_basis(j);
        for (int i = 0; i < dA; ++i) out.gamma.add({0, {j}, i}, col[i]);
    }
    return out;
}

RAvgCochain coboundary_of_pair(const CohomologyContext& c, const LinearOp& phi1,
                               const LinearOp& psi1) {
    const int dA = c.dimA(), dB = c.dimB();
    RAvgCochain one;
    one.degree = 1;
    one.maps = NAryMap(1, c.dimE());
    for (int j = 0; j < dA; ++j) {
        RatVector col = phi1.apply_basis(j);
        for (int i = 0; i < dA; ++i) one.maps.add({{j}, i}, col[i]);
    }
    for (int j = 0; j < dB; ++j) {
        RatVector col = psi1.apply_basis(j);
        for (int i = 0; i < dB; ++i) one.maps.add({{dA + j}, dA + i}, col[i]);
    }
    return c.delta_ravg(one);
}

bool deformations_equivalent(const CohomologyContext& c, const RAvgCochain& x,
                             const RAvgCochain& y) {
    RatVector vx = c.ravg_coords(x, 2), vy = c.ravg_coords(y, 2);
    for (std::size_t i = 0; i < vx.size(); ++i) vx[i] -= vy[i];
    RatMatrix d1 = c.matrix_ravg(1);
    RatVector sol;
    return solve(d1, vx, sol);
}

std::vector<RatVector> classify_deformations(const CohomologyContext& c) {
    return cohomology(c, Theory::RAvg, 2).representatives;
}

} // namespace triavg

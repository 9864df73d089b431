#include "triavg/htpy.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <stdexcept>

namespace triavg {

GradedSpace GradedSpace::concentrated(int degree, int dim) {
    GradedSpace s;
    s.dmin = s.dmax = degree;
    s.dims = {dim};
    return s;
}

GradedSpace GradedSpace::sum(const GradedSpace& a, const GradedSpace& b) {
    GradedSpace s;
    s.dmin = std::min(a.dmin, b.dmin);
    s.dmax = std::max(a.dmax, b.dmax);
    if (s.dmin > s.dmax) return s;
    s.dims.assign(s.dmax - s.dmin + 1, 0);
    for (int d = s.dmin; d <= s.dmax; ++d) s.dims[d - s.dmin] = a.dim(d) + b.dim(d);
    return s;
}

void HFamily::add(const HKey& k, const Rat& v) {
    if (v.is_zero()) return;
    const int arity = int(k.in.size());
    if (arity < 1 || arity > max_) throw std::invalid_argument("HFamily: arity overflow");
    int total = deg_;
    for (const GElem& e : k.in) {
        if (!sp_.in_window(e.deg) || e.idx < 0 || e.idx >= sp_.dim(e.deg))
            throw std::invalid_argument("HFamily: input outside the graded space");
        total += e.deg;
    }
    if (k.out.deg != total) throw std::invalid_argument("HFamily: operation does not raise degree correctly");
    if (!sp_.in_window(k.out.deg) || k.out.idx < 0 || k.out.idx >= sp_.dim(k.out.deg))
        throw std::invalid_argument("HFamily: output outside the graded space");
    if (trees_) {
        if (k.tree < 0 || k.tree >= int(enumerate_trees(arity).size()))
            throw std::invalid_argument("HFamily: tree index out of range");
    } else if (k.tree != -1) {
        throw std::invalid_argument("HFamily: tree key on a tree-free family");
    }
    auto it = c_.find(k);
    if (it == c_.end()) {
        c_.emplace(k, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
}

Rat HFamily::coeff(const HKey& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Rat() : it->second;
}

HFamily& HFamily::operator+=(const HFamily& o) {
    for (const auto& [k, v] : o.c_) add(k, v);
    return *this;
}

HFamily& HFamily::scale(const Rat& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& [k, v] : c_) v *= s;
    return *this;
}

std::map<GElem, Rat> HFamily::eval(int arity, int tree, const std::vector<GElem>& in) const {
    std::map<GElem, Rat> out;
    HKey lo{tree, in, GElem{INT_MIN, 0}};
    for (auto it = c_.lower_bound(lo); it != c_.end(); ++it) {
        if (it->first.tree != tree || it->first.in != in) break;
        out[it->first.out] = it->second;
    }
    (void)arity;
    return out;
}

namespace {

// All basis tuples of a graded space with the given arity.
struct TupleIter {
    const GradedSpace& sp;
    int arity;
    std::vector<GElem> cur;
    bool done = false;

    explicit TupleIter(const GradedSpace& s, int n) : sp(s), arity(n) {
        for (int i = 0; i < n; ++i) {
            GElem e = first_elem();
            if (e.deg > sp.dmax) { done = true; return; }
            cur.push_back(e);
        }
    }
    GElem first_elem() const {
        for (int d = sp.dmin; d <= sp.dmax; ++d)
            if (sp.dim(d) > 0) return {d, 0};
        return {sp.dmax + 1, 0};
    }
    bool next_elem(GElem& e) const {
        if (e.idx + 1 < sp.dim(e.deg)) {
            ++e.idx;
            return true;
        }
        for (int d = e.deg + 1; d <= sp.dmax; ++d)
            if (sp.dim(d) > 0) {
                e = {d, 0};
                return true;
            }
        return false;
    }
    void advance() {
        int s = arity;
        while (s > 0) {
            --s;
            if (next_elem(cur[s])) return;
            cur[s] = first_elem();
            if (s == 0) { done = true; return; }
        }
        done = true;  // arity 0
    }
};

int deg_sum_prefix(const std::vector<GElem>& xs, int upto) {
    int s = 0;
    for (int i = 0; i < upto; ++i) s += xs[i].deg;
    return s;
}

// Inner sum of the homotopy identity at one (tree, tuple); `tree` is -1 for
// tree-free families. Inner/outer plug signs use the Koszul rule with the
// inner family's map degree.
std::map<GElem, Rat> identity_value(const HFamily& fam, int n, int tree,
                                    const std::vector<GElem>& xs) {
    std::map<GElem, Rat> acc;
    for (int l = 1; l <= n; ++l) {
        int k = n + 1 - l;
        if (k < 1 || k > fam.max_arity() || l > fam.max_arity()) continue;
        for (int i = 1; i <= k; ++i) {
            int r0 = -1, ri = -1;
            if (tree >= 0) {
                const RTable& tab = r_table(k, i, l);
                r0 = tab.zero[tree];
                ri = tab.slot[tree];
            }
            std::vector<GElem> inner_in(xs.begin() + (i - 1), xs.begin() + (i - 1) + l);
            auto inner = fam.eval(l, ri, inner_in);
            if (inner.empty()) continue;
            int sgn = (fam.map_degree() * deg_sum_prefix(xs, i - 1)) % 2;
            for (const auto& [mid, cv] : inner) {
                std::vector<GElem> outer_in;
                outer_in.reserve(k);
                outer_in.insert(outer_in.end(), xs.begin(), xs.begin() + (i - 1));
                outer_in.push_back(mid);
                outer_in.insert(outer_in.end(), xs.begin() + (i - 1) + l, xs.end());
                auto outer = fam.eval(k, r0, outer_in);
                for (const auto& [out, ov] : outer) {
                    Rat term = cv * ov;
                    if (sgn) term = -term;
                    auto it = acc.find(out);
                    if (it == acc.end())
                        acc.emplace(out, term);
                    else {
                        it->second += term;
                        if (it->second.is_zero()) acc.erase(it);
                    }
                }
            }
        }
    }
    return acc;
}

std::string gelem_str(const GElem& e) {
    return "(" + std::to_string(e.deg) + "," + std::to_string(e.idx) + ")";
}

std::string tuple_str(const std::vector<GElem>& xs) {
    std::string s;
    for (const auto& e : xs) s += gelem_str(e);
    return s;
}

} // namespace

Report ainf_check(const HFamily& mu, int n_max) {
    if (mu.tree_keyed()) throw std::invalid_argument("ainf_check: family must be tree-free");
    Report rep;
    for (int n = 1; n <= n_max; ++n) {
        for (TupleIter it(mu.space(), n); !it.done; it.advance()) {
            auto val = identity_value(mu, n, -1, it.cur);
            if (!val.empty())
                rep.add("ainf:n=" + std::to_string(n), {}, tuple_str(it.cur), "0");
        }
    }
    return rep;
}

bool is_binary_tree(const PlanarTree& t) {
    if (t.is_leaf()) return true;
    if (t.children().size() != 2) return false;
    for (const auto& c : t.children())
        if (!is_binary_tree(c)) return false;
    return true;
}

Report triassinf_check(const HFamily& pi, int n_max) {
    if (!pi.tree_keyed()) throw std::invalid_argument("triassinf_check: family must be tree-keyed");
    Report rep;
    for (int n = 1; n <= n_max; ++n) {
        const auto& trees = enumerate_trees(n);
        for (int t = 0; t < int(trees.size()); ++t)
            for (TupleIter it(pi.space(), n); !it.done; it.advance()) {
                auto val = identity_value(pi, n, t, it.cur);
                if (!val.empty())
                    rep.add("triassinf:n=" + std::to_string(n), {t}, tuple_str(it.cur), "0");
            }
    }
    return rep;
}

Report diassinf_subreport(const Report& full, int n_max) {
    Report out;
    for (const auto& v : full.violations) {
        if (v.identity.rfind("triassinf:n=", 0) != 0 || v.tuple.empty()) continue;
        int n = std::stoi(v.identity.substr(12));
        if (n > n_max) continue;
        if (is_binary_tree(enumerate_trees(n)[v.tuple[0]])) {
            Violation w = v;
            w.identity = "diassinf:n=" + std::to_string(n);
            out.violations.push_back(std::move(w));
        }
    }
    return out;
}

HFamily diamond(const HFamily& pi, const HFamily& varpi) {
    if (!pi.tree_keyed() || !varpi.tree_keyed())
        throw std::invalid_argument("diamond: families must be tree-keyed");
    const int cap = pi.max_arity() + varpi.max_arity();
    HFamily out(pi.space(), pi.map_degree() + varpi.map_degree(), true, cap);
    // group varpi entries by (arity, tree, out) for the join
    std::map<std::tuple<int, int, GElem>, std::vector<const std::pair<const HKey, Rat>*>> by_out;
    std::set<int> varpi_arities;
    for (const auto& e : varpi.coeffs()) {
        by_out[{int(e.first.in.size()), e.first.tree, e.first.out}].push_back(&e);
        varpi_arities.insert(int(e.first.in.size()));
    }

    for (const auto& pe : pi.coeffs()) {
        const int k = int(pe.first.in.size());
        for (int l : varpi_arities) {
            const int r = k + l - 1;
            if (r > cap) throw std::invalid_argument("diamond: arity overflow");
            const auto& trees = enumerate_trees(r);
            for (int i = 1; i <= k; ++i) {
                const RTable& tab = r_table(k, i, l);
                for (int t = 0; t < int(trees.size()); ++t) {
                    if (tab.zero[t] != pe.first.tree) continue;
                    auto git = by_out.find({l, tab.slot[t], pe.first.in[i - 1]});
                    if (git == by_out.end()) continue;
                    for (const auto* ve : git->second) {
                        HKey k2;
                        k2.tree = t;
                        k2.in.reserve(r);
                        k2.in.insert(k2.in.end(), pe.first.in.begin(), pe.first.in.begin() + (i - 1));
                        k2.in.insert(k2.in.end(), ve->first.in.begin(), ve->first.in.end());
                        k2.in.insert(k2.in.end(), pe.first.in.begin() + i, pe.first.in.end());
                        k2.out = pe.first.out;
                        int sgn = (varpi.map_degree() * deg_sum_prefix(k2.in, i - 1)) % 2;
                        Rat c = pe.second * ve->second;
                        if (sgn) c = -c;
                        out.add(k2, c);
                    }
                }
            }
        }
    }
    return out;
}

HFamily big_bracket(const HFamily& pi, const HFamily& varpi) {
    HFamily a = diamond(pi, varpi);
    HFamily b = diamond(varpi, pi);
    if ((pi.map_degree() * varpi.map_degree()) % 2 == 0) b.scale(Rat(-1));
    a += b;
    return a;
}

HFamily restrict_distinguished(const HFamily& pi, BulletKind kind) {
    if (!pi.tree_keyed()) throw std::invalid_argument("restrict_distinguished: needs trees");
    HFamily out(pi.space(), pi.map_degree(), false, pi.max_arity());
    for (const auto& [k, v] : pi.coeffs()) {
        int n = int(k.in.size());
        if (k.tree != tree_index(distinguished(n, kind))) continue;
        HKey nk = k;
        nk.tree = -1;
        out.add(nk, v);
    }
    return out;
}

bool rep_well_typed(const AInfRep& r) {
    if (r.ops.tree_keyed()) return false;
    for (const auto& [k, v] : r.ops.coeffs()) {
        bool all_a = true;
        for (const GElem& e : k.in)
            if (!r.is_a_elem(e)) { all_a = false; break; }
        if (all_a != r.is_a_elem(k.out)) return false;
    }
    return true;
}

Report ainf_rep_check(const AInfRep& r, int n_max) {
    if (!rep_well_typed(r)) throw std::invalid_argument("ainf_rep_check: ops are not well typed");
    Report rep;
    for (int n = 1; n <= n_max; ++n) {
        for (TupleIter it(r.ops.space(), n); !it.done; it.advance()) {
            int count_a = 0;
            for (const GElem& e : it.cur)
                if (r.is_a_elem(e)) ++count_a;
            if (count_a == 0 || count_a == n) continue;  // mixed instances only
            auto val = identity_value(r.ops, n, -1, it.cur);
            if (!val.empty())
                rep.add("ainf-rep:n=" + std::to_string(n), {}, tuple_str(it.cur), "0");
        }
    }
    return rep;
}

HFamily induced_triassinf(const AInfRep& r, const Rat& lambda) {
    if (lambda.is_zero()) throw std::domain_error("induced_triassinf: weight must be nonzero");
    if (!rep_well_typed(r)) throw std::invalid_argument("induced_triassinf: ops are not well typed");
    HFamily out(r.ops.space(), r.ops.map_degree(), true, r.ops.max_arity());
    for (const auto& [k, v] : r.ops.coeffs()) {
        const int n = int(k.in.size());
        const auto& trees = enumerate_trees(n);
        bool all_a = r.is_a_elem(k.out) ;
        if (all_a) {
            // mu block appears on every tree
            for (int t = 0; t < int(trees.size()); ++t) {
                HKey nk = k;
                nk.tree = t;
                out.add(nk, v);
            }
            continue;
        }
        // (eta + nu) block: B slots must sit exactly at the grafting joints
        for (int t = 0; t < int(trees.size()); ++t) {
            auto parts = decompose(trees[t]);
            std::vector<bool> joint(n, false);
            int pos = 0;
            for (std::size_t f = 0; f + 1 < parts.size(); ++f) {
                pos += parts[f].arity() + 1;
                joint[pos - 1] = true;
            }
            bool match = true;
            for (int s = 0; s < n; ++s)
                if (joint[s] == r.is_a_elem(k.in[s])) { match = false; break; }
            if (!match) continue;
            HKey nk = k;
            nk.tree = t;
            out.add(nk, v * lambda.pow(int(parts.size()) - 2));
        }
    }
    return out;
}

namespace {

// projection onto all-B-inputs/A-output components
HFamily project_ba(const AInfRep& r, const HFamily& f) {
    HFamily out(f.space(), f.map_degree(), f.tree_keyed(), f.max_arity());
    for (const auto& [k, v] : f.coeffs()) {
        if (!r.is_a_elem(k.out)) continue;
        bool all_b = true;
        for (const GElem& e : k.in)
            if (r.is_a_elem(e)) { all_b = false; break; }
        if (all_b) out.add(k, v);
    }
    return out;
}

HFamily restrict_bb(const AInfRep& r, const HFamily& f) {
    HFamily out(f.space(), f.map_degree(), f.tree_keyed(), f.max_arity());
    for (const auto& [k, v] : f.coeffs()) {
        if (r.is_a_elem(k.out)) continue;
        bool all_b = true;
        for (const GElem& e : k.in)
            if (r.is_a_elem(e)) { all_b = false; break; }
        if (all_b) out.add(k, v);
    }
    return out;
}

} // namespace

HomotopyDefect homotopy_operator_check(const AInfRep& r, const Rat& lambda,
                                       const HomotopyOperator& p) {
    if (p.components.map_degree() != 0)
        throw std::invalid_argument("homotopy_operator_check: operator must have degree 0");
    for (const auto& [k, v] : p.components.coeffs()) {
        if (!r.is_a_elem(k.out)) throw std::invalid_argument("homotopy operator must land in A");
        for (const GElem& e : k.in)
            if (r.is_a_elem(e)) throw std::invalid_argument("homotopy operator eats B inputs");
    }
    HFamily pi = induced_triassinf(r, lambda);
    HomotopyDefect out;
    out.defect = HFamily(pi.space(), 1, true, 16);
    HFamily total(pi.space(), 1, true, 16);
    HFamily term = pi;
    Rat factorial(1);
    int j = 0;
    while (!term.is_zero()) {
        HFamily scaled = term;
        scaled.scale(Rat(1) / factorial);
        total += scaled;
        ++j;
        if (j > 8) throw std::runtime_error("homotopy_operator_check: exponential failed to terminate");
        factorial *= Rat(j);
        term = big_bracket(term, p.components);
    }
    out.exponential_terms = j;
    out.defect = project_ba(r, total);
    out.induced_on_b = restrict_bb(r, total);
    return out;
}

HFamily strict_triassinf(const TriassSpec& d) {
    GradedSpace sp = GradedSpace::concentrated(-1, d.dim);
    HFamily out(sp, 1, true, 4);
    PlanarTree one = PlanarTree::node({PlanarTree::leaf(), PlanarTree::leaf()});
    int td = tree_index(PlanarTree::node({PlanarTree::leaf(), one}));
    int tv = tree_index(PlanarTree::node({one, PlanarTree::leaf()}));
    int tp = tree_index(
        PlanarTree::node({PlanarTree::leaf(), PlanarTree::leaf(), PlanarTree::leaf()}));
    for (int i = 0; i < d.dim; ++i)
        for (int j = 0; j < d.dim; ++j)
            for (int k = 0; k < d.dim; ++k) {
                out.add({td, {{-1, i}, {-1, j}}, {-1, k}}, d.dashv.at(i, j, k));
                out.add({tv, {{-1, i}, {-1, j}}, {-1, k}}, d.vdash.at(i, j, k));
                out.add({tp, {{-1, i}, {-1, j}}, {-1, k}}, d.perp.at(i, j, k));
            }
    return out;
}

AInfRep strict_rep(const BimodSpec& b) {
    const int dA = b.algebra.dim, dB = b.dimB;
    AInfRep r;
    r.space_a = GradedSpace::concentrated(-1, dA);
    r.space_b = GradedSpace::concentrated(-1, dB);
    GradedSpace sum = GradedSpace::sum(r.space_a, r.space_b);
    r.ops = HFamily(sum, 1, false, 4);
    auto A = [&](int i) { return GElem{-1, i}; };
    auto B = [&](int i) { return GElem{-1, dA + i}; };
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dA; ++k)
                r.ops.add({-1, {A(i), A(j)}, A(k)}, b.algebra.mu.at(i, j, k));
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dB; ++k) r.ops.add({-1, {B(i), B(j)}, B(k)}, b.nu.at(i, j, k));
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dB; ++j)
            for (int k = 0; k < dB; ++k) r.ops.add({-1, {A(i), B(j)}, B(k)}, b.left.at(i, j, k));
    for (int i = 0; i < dB; ++i)
        for (int j = 0; j < dA; ++j)
            for (int k = 0; k < dB; ++k) r.ops.add({-1, {B(i), A(j)}, B(k)}, b.right.at(i, j, k));
    return r;
}

HomotopyOperator strict_operator(const AInfRep& r, const LinearOp& p, int dim_a) {
    HomotopyOperator op;
    op.components = HFamily(r.ops.space(), 0, true, 4);
    for (int j = 0; j < p.src_dim; ++j)
        for (int i = 0; i < p.dst_dim; ++i)
            op.components.add({0, {{-1, dim_a + j}}, {-1, i}}, p.matrix.at(i, j));
    return op;
}

} // namespace triavg

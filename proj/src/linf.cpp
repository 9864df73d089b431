#include "triavg/linf.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace triavg {

namespace {

void accumulate(Cochain& dst, const Cochain& src) {
    if (src.is_zero()) return;
    if (dst.arity() == 0)
        dst = src;
    else
        dst += src;
}

} // namespace

LInfElement& LInfElement::operator+=(const LInfElement& o) {
    accumulate(h, o.h);
    accumulate(a, o.a);
    return *this;
}

LInfElement& LInfElement::scale(const Rat& s) {
    h.scale(s);
    a.scale(s);
    return *this;
}

bool VData::in_h(const Cochain& f) const {
    const int dA = ctx_.dimA();
    for (const auto& [k, v] : f.coeffs()) {
        bool has_b = false;
        for (int i : k.in)
            if (i >= dA) { has_b = true; break; }
        if (k.out < dA && has_b) return false;   // A-valued needs pure-A inputs
        if (k.out >= dA && !has_b) return false; // B-valued needs a B input
    }
    return true;
}

int VData::degree(const LInfElement& x) const {
    int dh = x.h.is_zero() ? INT_MIN : x.h.arity() - 2;
    int da = x.a.is_zero() ? INT_MIN : x.a.arity() - 1;
    if (dh == INT_MIN && da == INT_MIN) return 0;  // zero element, degree immaterial
    if (dh == INT_MIN) return da;
    if (da == INT_MIN) return dh;
    if (dh != da) throw std::invalid_argument("LInfElement: parts of different degree");
    return dh;
}

LInfElement VData::lk(const std::vector<LInfElement>& args) const {
    const std::size_t k = args.size();
    if (k == 0) throw std::invalid_argument("lk: needs at least one input");
    LInfElement out;
    if (k == 1) {
        // l_1((s^{-1}x, a)) = (0, p(x)) since Delta = 0
        if (!args[0].h.is_zero()) out.a = p(args[0].h);
        return out;
    }
    // expand multilinearly into pure-h / pure-a patterns
    std::vector<int> degs(k);
    for (std::size_t i = 0; i < k; ++i) degs[i] = degree(args[i]);
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        int h_count = 0;
        bool dead = false;
        for (std::size_t i = 0; i < k; ++i) {
            bool use_h = (mask >> i) & 1;
            if (use_h) {
                ++h_count;
                if (args[i].h.is_zero()) { dead = true; break; }
            } else if (args[i].a.is_zero()) {
                dead = true;
                break;
            }
        }
        if (dead) continue;
        if (h_count == 0) continue;       // all-a uses Delta = 0
        if (h_count >= 3) continue;
        if (h_count == 2 && k != 2) continue;
        if (h_count == 2) {
            // l_2((s^{-1}x, 0), (s^{-1}y, 0)) = ((-1)^{|x|} s^{-1}[x, y], 0)
            const Cochain& x = args[0].h;
            const Cochain& y = args[1].h;
            Cochain b = bracket(x, y);
            if ((x.arity() - 1) % 2) b.scale(Rat(-1));
            LInfElement term;
            term.h = b;
            out += term;
            continue;
        }
        // exactly one h slot: Koszul sign to move it to the front
        std::size_t hpos = 0;
        for (std::size_t i = 0; i < k; ++i)
            if ((mask >> i) & 1) hpos = i;
        int sign = 0;
        int dh = args[hpos].h.arity() - 2;  // element degree of the s^{-1}h slot
        for (std::size_t i = 0; i < hpos; ++i) sign += dh * (args[i].a.arity() - 1);
        Cochain acc = args[hpos].h;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == hpos) continue;
            acc = bracket(acc, args[i].a);
        }
        Cochain projected = p(acc);
        if (sign % 2) projected.scale(Rat(-1));
        LInfElement term;
        term.a = projected;
        out += term;
    }
    return out;
}

LInfElement VData::twisted_lk(const LInfElement& alpha, const std::vector<LInfElement>& args) const {
    if (degree(alpha) != 0) throw std::invalid_argument("twisted_lk: alpha must have degree 0");
    LInfElement out;
    Rat factorial(1);
    const int hard_cap = 10;
    for (int j = 0; ; ++j) {
        if (j > 0) factorial *= Rat(j);
        std::vector<LInfElement> in;
        in.reserve(j + args.size());
        for (int t = 0; t < j; ++t) in.push_back(alpha);
        for (const auto& x : args) in.push_back(x);
        LInfElement term = lk(in);
        term.scale(Rat(1) / factorial);
        out += term;
        // filtration bound: bracketing with the degree-0 alpha dies once j
        // exceeds every involved arity plus two
        int max_ar = 2;
        for (const auto& x : args) max_ar = std::max({max_ar, x.h.arity(), x.a.arity()});
        if (j >= max_ar + 2) {
            if (!term.is_zero())
                throw std::runtime_error("twisted_lk: series failed to terminate within bound");
            break;
        }
        if (j >= hard_cap) throw std::runtime_error("twisted_lk: hard iteration bound exceeded");
    }
    return out;
}

LInfElement VData::canonical_alpha() const {
    LInfElement a;
    a.h = ctx_.pi_lambda();
    a.a = ctx_.p_embedded();
    return a;
}

LInfElement VData::lk_diagonal(const LInfElement& alpha, int k) const {
    return lk(std::vector<LInfElement>(k, alpha));
}

LInfElement VData::mc_sum(const LInfElement& candidate, int max_k) const {
    LInfElement out;
    Rat factorial(1);
    for (int k = 1; k <= max_k; ++k) {
        factorial *= Rat(k);
        LInfElement term = lk_diagonal(candidate, k);
        term.scale(Rat(1) / factorial);
        out += term;
    }
    return out;
}

LInfElement VData::mc_sum_twisted(const LInfElement& alpha, const LInfElement& candidate,
                                  int max_k) const {
    LInfElement out;
    Rat factorial(1);
    for (int k = 1; k <= max_k; ++k) {
        factorial *= Rat(k);
        LInfElement term = twisted_lk(alpha, std::vector<LInfElement>(k, candidate));
        term.scale(Rat(1) / factorial);
        out += term;
    }
    return out;
}

std::vector<std::vector<int>> shuffles(int i, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int next) -> void {
        if (int(pick.size()) == i) {
            std::vector<int> sigma = pick;
            for (int v = 0; v < n; ++v)
                if (std::find(pick.begin(), pick.end(), v) == pick.end()) sigma.push_back(v);
            out.push_back(std::move(sigma));
            return;
        }
        for (int v = next; v < n; ++v) {
            pick.push_back(v);
            self(self, v + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Report VData::higher_jacobi(const std::vector<LInfElement>& samples, int n_max) const {
    Report rep;
    for (int n = 1; n <= n_max; ++n) {
        if (int(samples.size()) < n) break;
        std::vector<LInfElement> xs(samples.begin(), samples.begin() + n);
        std::vector<int> degs(n);
        for (int i = 0; i < n; ++i) degs[i] = degree(xs[i]);
        LInfElement total;
        for (int i = 1; i <= n; ++i) {
            int j = n + 1 - i;
            for (const auto& sigma : shuffles(i, n)) {
                // Koszul sign of the permutation on graded symbols
                int sign = 0;
                std::vector<int> seen;
                for (int pos = 0; pos < n; ++pos) {
                    int v = sigma[pos];
                    for (int w : seen)
                        if (w > v) sign += degs[v] * degs[w];
                    seen.push_back(v);
                }
                std::vector<LInfElement> inner_args;
                for (int t = 0; t < i; ++t) inner_args.push_back(xs[sigma[t]]);
                LInfElement inner = lk(inner_args);
                if (inner.is_zero() && j > 1) continue;
                std::vector<LInfElement> outer_args{inner};
                for (int t = i; t < n; ++t) outer_args.push_back(xs[sigma[t]]);
                LInfElement term = j == 0 ? inner : lk(outer_args);
                if (sign % 2) term.scale(Rat(-1));
                total += term;
            }
        }
        if (!total.is_zero())
            rep.add("jacobi:n=" + std::to_string(n), {}, "nonzero", "0");
    }
    return rep;
}

LInfElement mc_pair_check(const RAvgSpec& s) {
    VData v(s);
    LInfElement alpha = v.canonical_alpha();
    LInfElement defect = v.mc_sum(alpha, 5);
    return defect;
}

} // namespace triavg

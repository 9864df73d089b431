#pragma once

// Shared test helpers: deterministic RNG, fixture algebras, random valid
// bimodules via change of basis, mutation helpers.

#include "triavg/cochain.hpp"
#include "triavg/oper.hpp"

#include <random>

namespace triavg::testutil {

using Rng = std::mt19937_64;

inline Rat rand_rat(Rng& rng, int num_range = 3, int den_choices = 2) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_choices);
    return Rat(num(rng), den(rng));
}

inline RatVector rand_vec(Rng& rng, int dim) {
    RatVector v(dim);
    for (auto& x : v) x = rand_rat(rng);
    return v;
}

/// Unipotent-times-permutation random invertible matrix (exact inverse exists).
inline RatMatrix rand_invertible(Rng& rng, int n) {
    RatMatrix m = RatMatrix::identity(n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int step = 0; step < 3 * n; ++step) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        Rat c = rand_rat(rng, 2, 1);
        for (int k = 0; k < n; ++k) m.at(i, k) += c * m.at(j, k);
    }
    return m;
}

// ---- fixture algebras -------------------------------------------------

/// K[Z/2]: basis e, g with e central unit, g^2 = e.
inline AssocSpec kz2() {
    AssocSpec a(2);
    a.mu.at(0, 0, 0) = Rat(1);
    a.mu.at(0, 1, 1) = Rat(1);
    a.mu.at(1, 0, 1) = Rat(1);
    a.mu.at(1, 1, 0) = Rat(1);
    return a;
}

/// Diagonal algebra K^n: e_i e_j = delta_ij e_i.
inline AssocSpec diagonal_algebra(int n) {
    AssocSpec a(n);
    for (int i = 0; i < n; ++i) a.mu.at(i, i, i) = Rat(1);
    return a;
}

/// Truncated polynomials K[x]/x^n with basis 1, x, ..., x^{n-1}.
inline AssocSpec truncated_poly(int n) {
    AssocSpec a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) a.mu.at(i, j, i + j) = Rat(1);
    return a;
}

/// Superalgebra K e + K f with e unit-ish, f^2 = 0 (e.e=e, e.f=f.e=f).
inline AssocSpec super2() {
    AssocSpec a(2);
    a.mu.at(0, 0, 0) = Rat(1);
    a.mu.at(0, 1, 1) = Rat(1);
    a.mu.at(1, 0, 1) = Rat(1);
    return a;
}

/// z-multiplication averaging operator on K[Z/2]: P(a) = (e+g)a, weight 2.
inline LinearOp kz2_avg_operator() {
    LinearOp p(2, 2);
    p.matrix.at(0, 0) = Rat(1);
    p.matrix.at(1, 0) = Rat(1);
    p.matrix.at(0, 1) = Rat(1);
    p.matrix.at(1, 1) = Rat(1);
    return p;
}

/// Adjoint bimodule of a.
inline BimodSpec adjoint_bimodule(const AssocSpec& a) {
    BimodSpec b(a, a.dim);
    b.nu = a.mu;
    b.left = a.mu;
    b.right = a.mu;
    return b;
}

/// B = A (+) A with componentwise product and diagonal actions.
inline BimodSpec double_bimodule(const AssocSpec& a) {
    const int n = a.dim;
    BimodSpec b(a, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Rat& c = a.mu.at(i, j, k);
                if (c.is_zero()) continue;
                b.nu.at(i, j, k) = c;
                b.nu.at(n + i, n + j, n + k) = c;
                b.left.at(i, j, k) = c;
                b.left.at(i, n + j, n + k) = c;
                b.right.at(i, j, k) = c;
                b.right.at(n + i, j, n + k) = c;
            }
    return b;
}

/// B = A (+) A with the deformed product whose k-th place collects
/// sum_{j<k} a_k b_j + sum_{i<k} a_i b_k + a_k b_k; average map has weight 1/2.
inline BimodSpec deformed_double_bimodule(const AssocSpec& a) {
    const int n = a.dim;
    BimodSpec b(a, 2 * n);
    auto add_mu = [&](int slot_x, int slot_y, int slot_out) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    b.nu.at(slot_x * n + i, slot_y * n + j, slot_out * n + k) += a.mu.at(i, j, k);
    };
    add_mu(0, 0, 0);               // (ab)_1 = a_1 b_1
    add_mu(1, 0, 1);               // a_2 b_1
    add_mu(0, 1, 1);               // a_1 b_2
    add_mu(1, 1, 1);               // a_2 b_2
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Rat& c = a.mu.at(i, j, k);
                if (c.is_zero()) continue;
                for (int s = 0; s < 2; ++s) {
                    b.left.at(i, s * n + j, s * n + k) = c;
                    b.right.at(s * n + i, j, s * n + k) = c;
                }
            }
    return b;
}

/// B = A[t]/(t^2) with the product having no t^2 term.
inline BimodSpec dual_number_bimodule(const AssocSpec& a) {
    const int n = a.dim;
    BimodSpec b(a, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Rat& c = a.mu.at(i, j, k);
                if (c.is_zero()) continue;
                b.nu.at(i, j, k) = c;
                b.nu.at(n + i, j, n + k) = c;
                b.nu.at(i, n + j, n + k) = c;
                b.left.at(i, j, k) = c;
                b.left.at(i, n + j, n + k) = c;
                b.right.at(i, j, k) = c;
                b.right.at(n + i, j, n + k) = c;
            }
    return b;
}

/// Change of basis: A by g, B by h (both invertible). Preserves validity.
inline BimodSpec basis_change(const BimodSpec& b, const RatMatrix& g, const RatMatrix& h) {
    const int dA = b.algebra.dim, dB = b.dimB;
    RatMatrix gi = inverse(g), hi = inverse(h);
    BimodSpec out(AssocSpec(dA), dB);
    auto transform = [](const Tensor3& t, const RatMatrix& m1, const RatMatrix& m2,
                        const RatMatrix& mo_inv) {
        // new(i,j) = mo_inv . old(m1 e_i, m2 e_j)
        Tensor3 nt(t.dim1(), t.dim2(), t.dim_out());
        for (int i = 0; i < t.dim1(); ++i)
            for (int j = 0; j < t.dim2(); ++j) {
                RatVector x = m1.col(i), y = m2.col(j);
                RatVector v = mo_inv.apply(t.apply(x, y));
                for (int k = 0; k < t.dim_out(); ++k) nt.at(i, j, k) = v[k];
            }
        return nt;
    };
    out.algebra.mu = transform(b.algebra.mu, g, g, gi);
    out.nu = transform(b.nu, h, h, hi);
    out.left = transform(b.left, g, h, hi);
    out.right = transform(b.right, h, g, hi);
    return out;
}

/// Deterministic stream of valid bimodules at dims <= 3.
inline BimodSpec random_valid_bimodule(Rng& rng, int index) {
    AssocSpec bases[] = {diagonal_algebra(1), kz2(), truncated_poly(2), super2(),
                         diagonal_algebra(2), truncated_poly(3), diagonal_algebra(3)};
    AssocSpec a = bases[index % 7];
    BimodSpec b;
    switch ((index / 7) % 3) {
        case 0: b = adjoint_bimodule(a); break;
        case 1: b = dual_number_bimodule(a); break;
        default: b = double_bimodule(a); break;
    }
    if (b.dimB > 3) b = adjoint_bimodule(a);  // keep dims <= 3
    RatMatrix g = rand_invertible(rng, b.algebra.dim);
    RatMatrix h = rand_invertible(rng, b.dimB);
    return basis_change(b, g, h);
}

/// Projection fixture: A arbitrary, B = A (+) A componentwise, P = first projection.
inline RAvgSpec projection_fixture(const AssocSpec& a) {
    RAvgSpec s;
    s.bimodule = double_bimodule(a);
    s.P = LinearOp(2 * a.dim, a.dim);
    for (int i = 0; i < a.dim; ++i) s.P.matrix.at(i, i) = Rat(1);
    s.lambda = Rat(1);
    return s;
}

/// Average-map fixture of weight 1/2 on the deformed product.
inline RAvgSpec average_fixture(const AssocSpec& a) {
    RAvgSpec s;
    s.bimodule = deformed_double_bimodule(a);
    s.P = LinearOp(2 * a.dim, a.dim);
    for (int i = 0; i < a.dim; ++i) {
        s.P.matrix.at(i, i) = Rat(1, 2);
        s.P.matrix.at(i, a.dim + i) = Rat(1, 2);
    }
    s.lambda = Rat(1, 2);
    return s;
}

} // namespace triavg::testutil

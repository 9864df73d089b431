#pragma once

#include "triavg/oper.hpp"
#include "triavg/trees.hpp"

#include <map>

namespace triavg {

/// Key of one coefficient of a tree-indexed multilinear map:
/// f(tree; e_{in[0]}, ..., e_{in[n-1]}) has e_out-coefficient c.
struct CochainKey {
    int tree;
    std::vector<int> in;
    int out;
    friend auto operator<=>(const CochainKey&, const CochainKey&) = default;
};

/// Sparse f in Hom(K[T_n] (x) V^{(x)n}, W); graded Lie degree is arity - 1.
class Cochain {
public:
    Cochain() : arity_(0), src_(0), dst_(0) {}
    Cochain(int arity, int src, int dst) : arity_(arity), src_(src), dst_(dst) {}

    int arity() const { return arity_; }
    int src_dim() const { return src_; }
    int dst_dim() const { return dst_; }
    int degree() const { return arity_ - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::map<CochainKey, Rat>& coeffs() const { return c_; }

    void add(const CochainKey& k, const Rat& v);
    Rat coeff(const CochainKey& k) const;

    Cochain& operator+=(const Cochain& o);
    Cochain& operator-=(const Cochain& o);
    Cochain& scale(const Rat& s);
    friend bool operator==(const Cochain& a, const Cochain& b) {
        return a.arity_ == b.arity_ && a.src_ == b.src_ && a.dst_ == b.dst_ && a.c_ == b.c_;
    }

    /// f(tree; x_1..x_n) for dense input vectors.
    RatVector eval(int tree, const std::vector<RatVector>& xs) const;

private:
    int arity_, src_, dst_;
    std::map<CochainKey, Rat> c_;
};

/// (f o_i g) per the tree-composition formula; 1 <= i <= arity(f).
Cochain circ(const Cochain& f, int i, const Cochain& g);

/// Degree -1 graded Lie bracket on +(n) C^n(V,V).
Cochain bracket(const Cochain& f, const Cochain& g);

/// The 2-cochain encoding a triassociative structure on its three 2-trees.
Cochain pi_of_triass(const TriassSpec& d);

/// Explicit triassociative differential; agrees with (-1)^{n-1}[pi, f].
Cochain delta_triass(const TriassSpec& d, const Cochain& f);

/// Carrier A (+) B with the structure 2-cochain pi_lambda and projection to
/// C(B, A). Basis order: A indices first, then B.
class RAvgContext {
public:
    explicit RAvgContext(RAvgSpec s);

    const RAvgSpec& spec() const { return s_; }
    int dimA() const { return s_.bimodule.algebra.dim; }
    int dimB() const { return s_.bimodule.dimB; }
    int dim() const { return dimA() + dimB(); }

    const Cochain& pi_lambda() const { return pi_; }
    /// P embedded as a 1-cochain on A (+) B.
    Cochain p_embedded() const;

    bool in_a_part(const Cochain& f) const;                // supported on B-inputs, A-output
    Cochain project_a(const Cochain& f) const;             // p: restrict to C(B,A) keys
    Cochain embed(const Cochain& f_ba) const;              // C^n(B,A) -> C^n(A+B, A+B)
    Cochain restrict_ba(const Cochain& f) const;           // inverse of embed on its image

    /// Derived bracket [[f, g]] = (-1)^m p([[pi, f], g]) for f, g in C(B,A)
    /// (standalone B->A cochains).
    Cochain derived_bracket(const Cochain& f_ba, const Cochain& g_ba) const;

    /// Explicit operator-complex differential d : C^n(B,A) -> C^{n+1}(B,A).
    Cochain d_operator(const Cochain& f_ba) const;

    /// Maurer-Cartan defect dP + 1/2 [[P, P]] in C^2(B,A).
    Cochain mc_operator() const;

    /// Twisted differential d_P f = d f + [[P, f]]; requires mc_operator() = 0.
    Cochain d_p(const Cochain& f_ba) const;

    /// P as a standalone 1-cochain in C^1(B,A).
    Cochain p_cochain() const;

private:
    RAvgSpec s_;
    Cochain pi_;
};

/// Structure 2-cochain of bimodule data on A (+) B (no operator needed).
Cochain pi_lambda_of(const BimodSpec& b, const Rat& lambda);

} // namespace triavg

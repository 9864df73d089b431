#pragma once

#include "triavg/la.hpp"
#include "triavg/report.hpp"

#include <array>
#include <string>
#include <vector>

namespace triavg {

/// Rank-3 structure tensor: product(e_i, e_j) = sum_k t[i][j][k] e_k.
/// Input dimensions may differ (actions); output dimension is `dim_out`.
class Tensor3 {
public:
    Tensor3() : d1_(0), d2_(0), dout_(0) {}
    Tensor3(int d1, int d2, int dout)
        : d1_(d1), d2_(d2), dout_(dout), a_(std::size_t(d1) * d2 * dout) {}

    int dim1() const { return d1_; }
    int dim2() const { return d2_; }
    int dim_out() const { return dout_; }

    Rat& at(int i, int j, int k) { return a_[(std::size_t(i) * d2_ + j) * dout_ + k]; }
    const Rat& at(int i, int j, int k) const { return a_[(std::size_t(i) * d2_ + j) * dout_ + k]; }

    /// product(x, y) as a coefficient vector.
    RatVector apply(const RatVector& x, const RatVector& y) const;
    RatVector apply_basis(int i, int j) const;
    bool is_zero() const;

    friend bool operator==(const Tensor3& a, const Tensor3& b) {
        return a.d1_ == b.d1_ && a.d2_ == b.d2_ && a.dout_ == b.dout_ && a.a_ == b.a_;
    }

private:
    int d1_, d2_, dout_;
    std::vector<Rat> a_;
};

/// Linear map between based spaces; matrix is dst_dim x src_dim.
struct LinearOp {
    int src_dim = 0;
    int dst_dim = 0;
    RatMatrix matrix;

    LinearOp() = default;
    LinearOp(int src, int dst) : src_dim(src), dst_dim(dst), matrix(dst, src) {}
    static LinearOp identity(int n);

    RatVector apply(const RatVector& x) const { return matrix.apply(x); }
    RatVector apply_basis(int j) const { return matrix.col(j); }
};

struct AssocSpec {
    int dim = 0;
    Tensor3 mu;

    AssocSpec() = default;
    explicit AssocSpec(int d) : dim(d), mu(d, d, d) {}
};

/// Associative algebra B with a compatible A-bimodule structure.
struct BimodSpec {
    AssocSpec algebra;   // A
    int dimB = 0;
    Tensor3 nu;          // B x B -> B
    Tensor3 left;        // A x B -> B
    Tensor3 right;       // B x A -> B

    BimodSpec() = default;
    BimodSpec(AssocSpec a, int db)
        : algebra(std::move(a)), dimB(db),
          nu(db, db, db), left(algebra.dim, db, db), right(db, algebra.dim, db) {}
};

struct TriassSpec {
    int dim = 0;
    Tensor3 dashv, vdash, perp;

    TriassSpec() = default;
    explicit TriassSpec(int d) : dim(d), dashv(d, d, d), vdash(d, d, d), perp(d, d, d) {}
    const Tensor3& product(int which) const {  // 0 = dashv, 1 = vdash, 2 = perp
        return which == 0 ? dashv : which == 1 ? vdash : perp;
    }
};

struct TriDendSpec {
    int dim = 0;
    Tensor3 prec, succ, curly;

    TriDendSpec() = default;
    explicit TriDendSpec(int d) : dim(d), prec(d, d, d), succ(d, d, d), curly(d, d, d) {}
};

std::string vec_str(const RatVector& v);

Report check_assoc(const AssocSpec& a, bool stop_at_first = false);
Report check_bimodule(const BimodSpec& b, bool stop_at_first = false);

/// All eleven triassociative identities over basis triples. Tags a1..a11;
/// the diassociative fragment is a1..a5 (filter_prefix on tags).
Report check_triass(const TriassSpec& d, bool stop_at_first = false);
Report check_tridend(const TriDendSpec& d, bool stop_at_first = false);

/// Semidirect triassociative algebra on A (+) B:
/// (a,x) -| (b,y) = (ab, x.b), (a,x) |- (b,y) = (ab, a.y), (a,x) _|_ (b,y) = (ab, l xy).
TriassSpec semidirect(const BimodSpec& b, const Rat& lambda);

/// Nijenhuis identity for all three products over basis pairs.
Report check_nijenhuis(const TriassSpec& d, const LinearOp& n, bool stop_at_first = false);

/// Smallest subspace containing the generators and closed under left/right
/// multiplication by every basis vector under all three products.
std::vector<RatVector> ideal_closure(const TriassSpec& d, const std::vector<RatVector>& generators);

/// Quotient construction behind the triass -> relative-averaging functor.
struct TriassQuotient {
    BimodSpec bimodule;           // A = D/I with [x][y] = [x -| y]; B = (D, _|_)
    LinearOp q;                   // D -> D/I, a relative averaging operator of weight 1
    std::vector<RatVector> ideal_basis;
    std::vector<int> rep_cols;    // basis columns of D chosen as coset representatives
};

TriassQuotient triass_to_ravg(const TriassSpec& d);

/// prec = dashv, succ = vdash, curly = -perp; validated by check_tridend.
TriDendSpec induced_tridendriform(const TriassSpec& d);

/// psi a triassociative morphism? (five tags: dashv, vdash, perp per pair)
Report check_triass_morphism(const TriassSpec& src, const TriassSpec& dst, const LinearOp& psi);

} // namespace triavg

#pragma once

#include "triavg/rat.hpp"

#include <cstddef>
#include <vector>

namespace triavg {

using RatVector = std::vector<Rat>;

/// Dense row-major matrix of exact rationals.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RatMatrix identity(std::size_t n);
    static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    RatMatrix transpose() const;
    RatVector apply(const RatVector& x) const;  // matrix * column vector
    RatMatrix mul(const RatMatrix& o) const;
    bool is_zero() const;
    RatVector row(std::size_t r) const;
    RatVector col(std::size_t c) const;

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

/// Reduced row echelon form plus pivot columns. Pivot choice is the first
/// nonzero entry in column order, so the result is deterministic.
struct Rref {
    RatMatrix mat;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

Rref rref(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Basis of ker(m) in echelon-parametrized canonical form, one vector per
/// free column in increasing order.
std::vector<RatVector> kernel_basis(const RatMatrix& m);

/// Solves m x = b; empty optional-like flag via bool return.
bool solve(const RatMatrix& m, const RatVector& b, RatVector& x);

/// Inverse of a square matrix; throws std::domain_error if singular.
RatMatrix inverse(const RatMatrix& m);

struct QuotientBasis {
    std::size_t dim = 0;
    std::vector<RatVector> representatives;  // complete span(im) to span(ker)
};

/// Quotient span(ker)/span(im). Throws std::domain_error when
/// span(im) is not contained in span(ker) (a broken differential).
QuotientBasis cokernel_quotient(const std::vector<RatVector>& im,
                                const std::vector<RatVector>& ker,
                                std::size_t ambient_dim);

/// Incrementally maintained row space used for span membership tests.
class SpanBuilder {
public:
    explicit SpanBuilder(std::size_t dim) : dim_(dim) {}
    std::size_t dim_ambient() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    bool contains(const RatVector& v) const;
    /// Returns true if v enlarged the span.
    bool add(RatVector v);

private:
    RatVector reduce(RatVector v) const;
    std::size_t dim_;
    std::vector<RatVector> rows_;            // echelonized, normalized
    std::vector<std::size_t> pivot_of_row_;
};

} // namespace triavg

#include "triavg/la.hpp"

#include <algorithm>
#include <map>

namespace triavg {

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

RatVector RatMatrix::apply(const RatVector& x) const {
    RatVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero() && !x[c].is_zero()) y[r] += at(r, c) * x[c];
    return y;
}

RatMatrix RatMatrix::mul(const RatMatrix& o) const {
    RatMatrix p(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& v = at(r, k);
            if (v.is_zero()) continue;
            for (std::size_t c = 0; c < o.cols_; ++c)
                if (!o.at(k, c).is_zero()) p.at(r, c) += v * o.at(k, c);
        }
    return p;
}

bool RatMatrix::is_zero() const {
    for (const Rat& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

RatVector RatMatrix::row(std::size_t r) const {
    RatVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

RatVector RatMatrix::col(std::size_t c) const {
    RatVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

namespace {

// Sparse row as sorted (col, value) pairs; used when the input is mostly zero.
using SparseRow = std::vector<std::pair<std::size_t, Rat>>;

Rref rref_sparse(const RatMatrix& m) {
    std::size_t nr = m.rows(), nc = m.cols();
    std::vector<SparseRow> rows(nr);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c)
            if (!m.at(r, c).is_zero()) rows[r].push_back({c, m.at(r, c)});

    auto get = [](const SparseRow& row, std::size_t c) -> Rat {
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& p, std::size_t x) { return p.first < x; });
        return (it != row.end() && it->first == c) ? it->second : Rat();
    };
    // dst += coef * src
    auto axpy = [](SparseRow& dst, const Rat& coef, const SparseRow& src) {
        SparseRow out;
        out.reserve(dst.size() + src.size());
        std::size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
                out.push_back(dst[i++]);
            } else if (i == dst.size() || src[j].first < dst[i].first) {
                Rat v = coef * src[j].second;
                if (!v.is_zero()) out.push_back({src[j].first, v});
                ++j;
            } else {
                Rat v = dst[i].second + coef * src[j].second;
                if (!v.is_zero()) out.push_back({dst[i].first, v});
                ++i; ++j;
            }
        }
        dst = std::move(out);
    };

    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t c = 0; c < nc && next < nr; ++c) {
        std::size_t p = nr;
        for (std::size_t r = next; r < nr; ++r)
            if (!rows[r].empty() && rows[r].front().first == c) { p = r; break; }
        if (p == nr) continue;
        std::swap(rows[next], rows[p]);
        Rat inv = Rat(1) / rows[next].front().second;
        for (auto& e : rows[next]) e.second *= inv;
        for (std::size_t r = 0; r < nr; ++r) {
            if (r == next) continue;
            Rat v = get(rows[r], c);
            if (!v.is_zero()) axpy(rows[r], -v, rows[next]);
        }
        pivots.push_back(c);
        ++next;
    }

    Rref out;
    out.mat = RatMatrix(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (auto& e : rows[r]) out.mat.at(r, e.first) = e.second;
    out.pivots = std::move(pivots);
    return out;
}

// Fraction-free (Bareiss) forward elimination on the denominator-cleared
// integer matrix, then rational back-substitution. RREF is unique, so the
// result coincides with the sparse path's.
Rref rref_dense(const RatMatrix& m) {
    std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Int>> a(nr, std::vector<Int>(nc));
    for (std::size_t r = 0; r < nr; ++r) {
        Int l = 1;
        for (std::size_t c = 0; c < nc; ++c)
            l = boost::multiprecision::lcm(l, m.at(r, c).den());
        for (std::size_t c = 0; c < nc; ++c)
            a[r][c] = m.at(r, c).num() * (l / m.at(r, c).den());
    }
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < nc && next < nr; ++c) {
        std::size_t p = nr;
        for (std::size_t r = next; r < nr; ++r)
            if (a[r][c] != 0) { p = r; break; }
        if (p == nr) continue;
        if (p != next) std::swap(a[next], a[p]);
        const Int pivot = a[next][c];
        // uniform one-step updates keep every entry a minor of the input,
        // so the division by the previous pivot is exact
        for (std::size_t r = next + 1; r < nr; ++r) {
            for (std::size_t k = c + 1; k < nc; ++k)
                a[r][k] = (a[r][k] * pivot - a[r][c] * a[next][k]) / prev;
            a[r][c] = 0;
        }
        prev = pivot;
        pivots.push_back(c);
        ++next;
    }
    // back-substitute over the rationals into reduced echelon form
    RatMatrix out(nr, nc);
    for (std::size_t i = pivots.size(); i-- > 0;) {
        std::size_t pc = pivots[i];
        RatVector row(nc);
        Rat inv = Rat(1) / Rat(a[i][pc]);
        for (std::size_t k = pc; k < nc; ++k) row[k] = Rat(a[i][k]) * inv;
        for (std::size_t j = i + 1; j < pivots.size(); ++j) {
            const Rat f = row[pivots[j]];
            if (f.is_zero()) continue;
            for (std::size_t k = pivots[j]; k < nc; ++k)
                if (!out.at(j, k).is_zero()) row[k] -= f * out.at(j, k);
        }
        for (std::size_t k = 0; k < nc; ++k) out.at(i, k) = row[k];
    }
    return Rref{std::move(out), std::move(pivots)};
}

} // namespace

Rref rref(const RatMatrix& m) {
    std::size_t total = m.rows() * m.cols();
    if (total == 0) return Rref{m, {}};
    std::size_t nz = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) ++nz;
    // Sparse fast path when at least 90% of the entries vanish.
    if (nz * 10 <= total) return rref_sparse(m);
    return rref_dense(m);
}

std::size_t rank(const RatMatrix& m) { return rref(m).rank(); }

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
    Rref e = rref(m);
    std::size_t nc = m.cols();
    std::vector<bool> is_pivot(nc, false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    std::vector<RatVector> basis;
    for (std::size_t j = 0; j < nc; ++j) {
        if (is_pivot[j]) continue;
        RatVector v(nc);
        v[j] = Rat(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.mat.at(r, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve(const RatMatrix& m, const RatVector& b, RatVector& x) {
    std::size_t nr = m.rows(), nc = m.cols();
    RatMatrix aug(nr, nc + 1);
    for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t c = 0; c < nc; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, nc) = b[r];
    }
    Rref e = rref(aug);
    x.assign(nc, Rat());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == nc) return false;  // inconsistent
        x[e.pivots[r]] = e.mat.at(r, nc);
    }
    return true;
}

RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::domain_error("inverse: not square");
    std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, n + r) = Rat(1);
    }
    Rref e = rref(aug);
    if (e.rank() < n || e.pivots[n - 1] >= n) throw std::domain_error("inverse: singular matrix");
    RatMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = e.mat.at(r, n + c);
    return inv;
}

bool SpanBuilder::contains(const RatVector& v) const {
    RatVector r = reduce(v);
    for (const Rat& x : r)
        if (!x.is_zero()) return false;
    return true;
}

bool SpanBuilder::add(RatVector v) {
    RatVector r = reduce(std::move(v));
    std::size_t p = dim_;
    for (std::size_t i = 0; i < dim_; ++i)
        if (!r[i].is_zero()) { p = i; break; }
    if (p == dim_) return false;
    Rat inv = Rat(1) / r[p];
    for (Rat& x : r) x *= inv;
    // keep earlier rows reduced against the new pivot
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][p].is_zero()) continue;
        Rat f = rows_[i][p];
        for (std::size_t c = 0; c < dim_; ++c) rows_[i][c] -= f * r[c];
    }
    auto it = std::lower_bound(pivot_of_row_.begin(), pivot_of_row_.end(), p);
    std::size_t idx = it - pivot_of_row_.begin();
    pivot_of_row_.insert(it, p);
    rows_.insert(rows_.begin() + idx, std::move(r));
    return true;
}

RatVector SpanBuilder::reduce(RatVector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::size_t p = pivot_of_row_[i];
        if (v[p].is_zero()) continue;
        Rat f = v[p];
        for (std::size_t c = 0; c < dim_; ++c)
            if (!rows_[i][c].is_zero()) v[c] -= f * rows_[i][c];
    }
    return v;
}

QuotientBasis cokernel_quotient(const std::vector<RatVector>& im,
                                const std::vector<RatVector>& ker,
                                std::size_t ambient_dim) {
    SpanBuilder ker_span(ambient_dim);
    for (const auto& v : ker) ker_span.add(v);
    SpanBuilder acc(ambient_dim);
    for (const auto& v : im) {
        if (!ker_span.contains(v))
            throw std::domain_error("cokernel_quotient: image not contained in kernel");
        acc.add(v);
    }
    std::size_t im_rank = acc.rank();
    QuotientBasis q;
    for (const auto& v : ker)
        if (acc.add(v)) q.representatives.push_back(v);
    q.dim = ker_span.rank() - im_rank;
    return q;
}

} // namespace triavg

#include "rht/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace rht::la {

SparseVec add(const SparseVec& a, const SparseVec& b)
{
    SparseVec r = a;
    for (const auto& [i, v] : b) {
        auto it = r.find(i);
        if (it == r.end()) {
            r.emplace(i, v);
        } else {
            it->second += v;
            if (it->second == 0)
                r.erase(it);
        }
    }
    return r;
}

SparseVec sub(const SparseVec& a, const SparseVec& b)
{
    return add(a, scale(Scalar(-1), b));
}

SparseVec scale(const Scalar& c, const SparseVec& v)
{
    SparseVec r;
    if (c == 0)
        return r;
    for (const auto& [i, x] : v)
        r.emplace(i, c * x);
    return r;
}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.row_[i].emplace(i, 1);
    return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, const std::vector<SparseVec>& cols)
{
    SparseMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : cols[c]) {
            assert(r < rows);
            m.row_[r].emplace(c, v);
        }
    return m;
}

SparseMatrix SparseMatrix::from_rows(std::size_t cols, const std::vector<SparseVec>& rows)
{
    SparseMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        m.row_[r] = rows[r];
    return m;
}

std::size_t SparseMatrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& r : row_)
        n += r.size();
    return n;
}

Scalar SparseMatrix::at(std::size_t r, std::size_t c) const
{
    auto it = row_[r].find(c);
    return it == row_[r].end() ? Scalar(0) : it->second;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& v)
{
    assert(r < rows_ && c < cols_);
    if (v == 0)
        row_[r].erase(c);
    else
        row_[r][c] = v;
}

SparseVec SparseMatrix::column(std::size_t c) const
{
    SparseVec v;
    for (std::size_t r = 0; r < rows_; ++r) {
        auto it = row_[r].find(c);
        if (it != row_[r].end())
            v.emplace(r, it->second);
    }
    return v;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : row_[r])
            t.row_[c].emplace(r, v);
    return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const
{
    assert(cols_ == rhs.rows_);
    SparseMatrix p(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        SparseVec acc;
        for (const auto& [k, v] : row_[r])
            for (const auto& [c, w] : rhs.row_[k]) {
                auto it = acc.find(c);
                if (it == acc.end())
                    acc.emplace(c, v * w);
                else
                    it->second += v * w;
            }
        for (const auto& [c, v] : acc)
            if (v != 0)
                p.row_[r].emplace(c, v);
    }
    return p;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const
{
    assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
    SparseMatrix s(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        s.row_[r] = add(row_[r], rhs.row_[r]);
    return s;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& rhs) const
{
    return *this + rhs.scaled(Scalar(-1));
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const
{
    SparseMatrix s(rows_, cols_);
    if (c == 0)
        return s;
    for (std::size_t r = 0; r < rows_; ++r)
        s.row_[r] = scale(c, row_[r]);
    return s;
}

bool SparseMatrix::operator==(const SparseMatrix& rhs) const
{
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && row_ == rhs.row_;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const
{
    SparseVec out;
    for (std::size_t r = 0; r < rows_; ++r) {
        Scalar acc = 0;
        const SparseVec& row = row_[r];
        /* iterate the shorter of the two maps */
        if (row.size() <= v.size()) {
            for (const auto& [c, x] : row) {
                auto it = v.find(c);
                if (it != v.end())
                    acc += x * it->second;
            }
        } else {
            for (const auto& [c, x] : v) {
                auto it = row.find(c);
                if (it != row.end())
                    acc += x * it->second;
            }
        }
        if (acc != 0)
            out.emplace(r, acc);
    }
    return out;
}

RrefResult rref(const SparseMatrix& m)
{
    std::vector<SparseVec> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.push_back(m.row(r));

    std::vector<SparseVec> done;       /* rows with pivots, in pivot-column order */
    std::vector<std::size_t> pivots;

    for (std::size_t col = 0; col < m.cols(); ++col) {
        /* pick the remaining row with a nonzero in `col` having fewest entries */
        std::size_t best = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!rows[i].count(col))
                continue;
            if (best == rows.size() || rows[i].size() < rows[best].size())
                best = i;
        }
        if (best == rows.size())
            continue;

        SparseVec piv = scale(Scalar(1) / rows[best].at(col), rows[best]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
        for (auto& r : rows) {
            auto it = r.find(col);
            if (it != r.end())
                r = sub(r, scale(it->second, piv));
        }
        for (auto& r : done) {
            auto it = r.find(col);
            if (it != r.end())
                r = sub(r, scale(it->second, piv));
        }
        done.push_back(std::move(piv));
        pivots.push_back(col);
    }

    SparseMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < done.size(); ++i)
        for (const auto& [c, v] : done[i])
            out.set(i, c, v);
    return RrefResult{std::move(out), std::move(pivots)};
}

std::size_t rank(const SparseMatrix& m)
{
    return rref(m).pivot_cols.size();
}

SubspaceBasis kernel_basis(const SparseMatrix& m)
{
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivot_cols)
        is_pivot[c] = true;

    SubspaceBasis basis;
    basis.ambient_dim = m.cols();
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        SparseVec v;
        v.emplace(f, 1);
        for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i) {
            Scalar e = rr.r.at(i, f);
            if (e != 0)
                v.emplace(rr.pivot_cols[i], -e);
        }
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

SubspaceBasis image_basis(const SparseMatrix& m)
{
    RrefResult rr = rref(m);
    SubspaceBasis basis;
    basis.ambient_dim = m.rows();
    for (std::size_t c : rr.pivot_cols)
        basis.vectors.push_back(m.column(c));
    return basis;
}

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b)
{
    /* rref of [m | b] */
    SparseMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r))
            aug.set(r, c, v);
    for (const auto& [r, v] : b) {
        assert(r < m.rows());
        aug.set(r, m.cols(), v);
    }

    RrefResult rr = rref(aug);
    SparseVec x;
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i) {
        std::size_t c = rr.pivot_cols[i];
        if (c == m.cols())
            return std::nullopt; /* pivot in the rhs column: inconsistent */
        Scalar v = rr.r.at(i, m.cols());
        if (v != 0)
            x.emplace(c, v);
    }
    return x;
}

std::optional<SparseVec> coords_in_span(const SubspaceBasis& basis, const SparseVec& v)
{
    return solve(SparseMatrix::from_columns(basis.ambient_dim, basis.vectors), v);
}

QuotientResult quotient_dim_and_reps(const SubspaceBasis& cycles, const SubspaceBasis& boundaries)
{
    assert(cycles.ambient_dim == boundaries.ambient_dim);

    /* every boundary must be a cycle */
    SparseMatrix z = SparseMatrix::from_columns(cycles.ambient_dim, cycles.vectors);
    std::size_t rz = rank(z);
    std::vector<SparseVec> both = cycles.vectors;
    both.insert(both.end(), boundaries.vectors.begin(), boundaries.vectors.end());
    if (rank(SparseMatrix::from_columns(cycles.ambient_dim, both)) != rz)
        throw BrokenComplexError("boundaries are not contained in cycles (d^2 != 0 upstream)");

    QuotientResult q;
    std::vector<SparseVec> span = boundaries.vectors;
    std::size_t base_rank = rank(SparseMatrix::from_columns(cycles.ambient_dim, span));
    for (const SparseVec& zv : cycles.vectors) {
        span.push_back(zv);
        std::size_t r = rank(SparseMatrix::from_columns(cycles.ambient_dim, span));
        if (r > base_rank) {
            base_rank = r;
            q.representatives.push_back(zv);
        } else {
            span.pop_back();
        }
    }
    q.dim = q.representatives.size();
    assert(q.dim == cycles.dim() - rank(SparseMatrix::from_columns(cycles.ambient_dim, boundaries.vectors)));
    return q;
}

}  // namespace rht::la

#include "mcdiv/matrix.hpp"

#include <stdexcept>

namespace mcdiv {

MatrixF::MatrixF(Field f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), a_(rows * cols, FieldElem(f, 0L))
{
}

MatrixF MatrixF::identity(Field f, std::size_t n)
{
    MatrixF m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = FieldElem(f, 1L);
    return m;
}

MatrixF MatrixF::from_rows(Field f, const std::vector<std::vector<Scalar>>& rows, std::size_t cols)
{
    MatrixF m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = FieldElem(f, rows[r][c]);
    }
    return m;
}

void MatrixF::append_row(const std::vector<FieldElem>& row)
{
    if (row.size() != cols_)
        throw std::invalid_argument("row length mismatch");
    a_.insert(a_.end(), row.begin(), row.end());
    ++rows_;
}

std::vector<FieldElem> MatrixF::apply(const std::vector<FieldElem>& v) const
{
    if (v.size() != cols_)
        throw std::invalid_argument("vector length mismatch");
    std::vector<FieldElem> out(rows_, FieldElem(f_, 0L));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero())
                out[r] += at(r, c) * v[c];
    return out;
}

std::vector<std::size_t> MatrixF::rref()
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t p = row;
        while (p < rows_ && at(p, col).is_zero())
            ++p;
        if (p == rows_)
            continue;
        if (p != row)
            for (std::size_t c = 0; c < cols_; ++c)
                std::swap(at(p, c), at(row, c));
        FieldElem inv = at(row, col).inverse();
        for (std::size_t c = col; c < cols_; ++c)
            at(row, c) *= inv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row || at(r, col).is_zero())
                continue;
            FieldElem k = at(r, col);
            for (std::size_t c = col; c < cols_; ++c)
                at(r, c) -= k * at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t MatrixF::rank() const
{
    MatrixF copy = *this;
    return copy.rref().size();
}

Kernel kernel(const MatrixF& m)
{
    MatrixF r = m;
    auto pivots = r.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    Kernel k;
    Field f = m.field();
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<FieldElem> v(m.cols(), FieldElem(f, 0L));
        v[free] = FieldElem(f, 1L);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r.at(i, free);
        k.basis.push_back(std::move(v));
    }
    k.dim = k.basis.size();
    return k;
}

std::vector<FieldElem> solve(const MatrixF& a, const std::vector<FieldElem>& b)
{
    std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n)
        throw std::invalid_argument("solve expects a square system");
    if (n == 0)
        return {};
    MatrixF aug(a.field(), n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug.at(r, c) = a.at(r, c);
        aug.at(r, n) = b[r];
    }
    auto pivots = aug.rref();
    if (pivots.size() != n || pivots.back() != n - 1)
        throw std::domain_error("singular linear system");
    std::vector<FieldElem> x(n, FieldElem(a.field(), 0L));
    for (std::size_t r = 0; r < n; ++r)
        x[r] = aug.at(r, n);
    return x;
}

}  // namespace mcdiv

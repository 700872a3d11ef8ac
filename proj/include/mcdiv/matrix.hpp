#pragma once

#include "mcdiv/field.hpp"

#include <vector>

namespace mcdiv {

class MatrixF {
public:
    MatrixF(Field f, std::size_t rows, std::size_t cols);
    static MatrixF identity(Field f, std::size_t n);
    static MatrixF from_rows(Field f, const std::vector<std::vector<Scalar>>& rows, std::size_t cols);

    Field field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    FieldElem& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const FieldElem& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void append_row(const std::vector<FieldElem>& row);

    std::vector<FieldElem> apply(const std::vector<FieldElem>& v) const;

    // Reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref();
    std::size_t rank() const;

private:
    Field f_;
    std::size_t rows_, cols_;
    std::vector<FieldElem> a_;
};

struct Kernel {
    std::size_t dim = 0;
    std::vector<std::vector<FieldElem>> basis;
};

Kernel kernel(const MatrixF& m);
inline std::size_t kernel_dim(const MatrixF& m) { return kernel(m).dim; }

// Unique solution of a square nonsingular system A x = b; throws if singular.
std::vector<FieldElem> solve(const MatrixF& a, const std::vector<FieldElem>& b);

}  // namespace mcdiv

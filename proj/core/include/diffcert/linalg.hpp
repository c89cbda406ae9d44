#pragma once

// Dense exact linear algebra over Q. Matrices here stay small (a few hundred
// columns at most), so elimination is plain Gauss-Jordan with zero skipping.

#include "diffcert/exact.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace diffcert {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigRat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigRat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<BigRat> multiply(std::span<const BigRat> x) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigRat> data_;
};

struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form.
RowEchelon rref(Matrix m);

/// Kernel basis. Each vector has a 1 in its own free column and 0 in the others.
std::vector<std::vector<BigRat>> kernel(const Matrix& m);

struct AffineSolution {
    bool consistent = false;
    std::vector<BigRat> particular;  // free variables set to zero
    std::vector<std::vector<BigRat>> homogeneous;
};

AffineSolution solve_affine(const Matrix& a, std::span<const BigRat> b);

/// det(t*I - m) via Hessenberg reduction.
UniPoly charpoly(const Matrix& square);

}  // namespace diffcert

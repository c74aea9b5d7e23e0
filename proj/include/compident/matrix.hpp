#pragma once

#include <cstddef>
#include <vector>

#include "compident/polynomial.hpp"

namespace compident {

// Dense rows x cols grid of polynomials.
class SymbolicMatrix {
public:
    SymbolicMatrix() = default;
    SymbolicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Polynomial& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
    const Polynomial& operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

    SymbolicMatrix without(std::size_t row, std::size_t col) const;
    SymbolicMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    std::vector<Polynomial> column(std::size_t c) const;

    friend bool operator==(const SymbolicMatrix&, const SymbolicMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Polynomial> cells_;
};

// Fraction-free Gaussian elimination (Bareiss) with exact polynomial division.
Polynomial determinant_bareiss(SymbolicMatrix m);
// Laplace expansion along rows with memoized column-subset minors.
Polynomial determinant_laplace(const SymbolicMatrix& m);
// Memoized Laplace up to 16x16, Bareiss beyond.
Polynomial determinant(const SymbolicMatrix& m);

}  // namespace compident

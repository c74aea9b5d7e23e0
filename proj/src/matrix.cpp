#include "compident/matrix.hpp"

#include <unordered_map>
#include <utility>

#include "compident/error.hpp"

namespace compident {

SymbolicMatrix SymbolicMatrix::without(std::size_t row, std::size_t col) const {
    SymbolicMatrix out(rows_ - 1, cols_ - 1);
    for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
        if (r == row) continue;
        for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
            if (c == col) continue;
            out(rr, cc++) = (*this)(r, c);
        }
        ++rr;
    }
    return out;
}

SymbolicMatrix SymbolicMatrix::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    SymbolicMatrix out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = (*this)(rows[r], cols[c]);
    }
    return out;
}

std::vector<Polynomial> SymbolicMatrix::column(std::size_t c) const {
    std::vector<Polynomial> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
}

Polynomial determinant_bareiss(SymbolicMatrix m) {
    if (!m.is_square()) throw PreconditionViolated("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Polynomial(1);
    bool negate = false;
    Polynomial prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k).is_zero()) ++swap;
            if (swap == n) return Polynomial();
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                if (prev.is_constant() && prev.constant_value() == 1) {
                    m(i, j) = std::move(num);
                } else {
                    auto q = num.exact_divide(prev);
                    if (!q) throw PreconditionViolated("Bareiss step produced an inexact division");
                    m(i, j) = std::move(*q);
                }
            }
            m(i, k) = Polynomial();
        }
        prev = m(k, k);
    }
    return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

Polynomial determinant_laplace(const SymbolicMatrix& m) {
    if (!m.is_square()) throw PreconditionViolated("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Polynomial(1);
    if (n > 20) throw TooLarge("Laplace expansion limited to 20x20");
    // minors[mask] = det of the bottom popcount(mask) rows restricted to the columns in mask.
    std::unordered_map<std::uint32_t, Polynomial> minors;
    minors.emplace(0u, Polynomial(1));
    for (std::size_t size = 1; size <= n; ++size) {
        const std::size_t row = n - size;
        std::unordered_map<std::uint32_t, Polynomial> next;
        for (const auto& [mask, sub] : minors) {
            if (sub.is_zero()) continue;
            int sign_pos = 0;
            for (std::size_t c = 0; c < n; ++c) {
                const std::uint32_t bit = 1u << c;
                if (mask & bit) {
                    ++sign_pos;
                    continue;
                }
                if (m(row, c).is_zero()) continue;
                // Column c sits at position (#columns of mask below c) in the enlarged minor.
                Polynomial term = m(row, c) * sub;
                if (sign_pos % 2) term = -term;
                next[mask | bit] += term;
            }
        }
        minors = std::move(next);
    }
    auto it = minors.find((n == 32 ? 0u : (1u << n)) - 1u);
    return it == minors.end() ? Polynomial() : it->second;
}

Polynomial determinant(const SymbolicMatrix& m) {
    // The subset-memoized expansion needs no division and stays far ahead of
    // Bareiss on these sparse matrices up to this size.
    if (m.rows() <= 16) return determinant_laplace(m);
    return determinant_bareiss(m);
}

}  // namespace compident

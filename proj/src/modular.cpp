#include "compident/modular.hpp"

#include <algorithm>

namespace compident::modp {

std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
    std::uint64_t result = 1 % p;
    base %= p;
    while (e > 0) {
        if (e & 1) result = mul(result, base, p);
        base = mul(base, base, p);
        e >>= 1;
    }
    return result;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) { return pow(a, p - 2, p); }

std::uint64_t reduce(const mpz_class& value, std::uint64_t p) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(value.get_mpz_t(), p);
}

bool is_probable_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // These bases are a deterministic witness set for all 64-bit n.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::size_t rank(std::vector<std::uint64_t>& m, std::size_t rows, std::size_t cols, std::uint64_t p) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) {
            std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                             m.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                             m.begin() + static_cast<std::ptrdiff_t>(r * cols));
        }
        const std::uint64_t inv = inverse(m[r * cols + c], p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const std::uint64_t f = mul(m[i * cols + c], inv, p);
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j) {
                m[i * cols + j] = sub(m[i * cols + j], mul(f, m[r * cols + j], p), p);
            }
        }
        ++r;
    }
    return r;
}

RowSpace::RowSpace(std::vector<std::uint64_t> m, std::size_t rows, std::size_t cols, std::uint64_t p)
    : cols_(cols), p_(p) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(m[pivot * cols + j], m[r * cols + j]);
        }
        const std::uint64_t inv = inverse(m[r * cols + c], p);
        for (std::size_t j = 0; j < cols; ++j) m[r * cols + j] = mul(m[r * cols + j], inv, p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const std::uint64_t f = m[i * cols + c];
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j) {
                m[i * cols + j] = sub(m[i * cols + j], mul(f, m[r * cols + j], p), p);
            }
        }
        basis_.emplace_back(m.begin() + static_cast<std::ptrdiff_t>(r * cols),
                            m.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
        pivots_.push_back(c);
        ++r;
    }
}

bool RowSpace::contains(std::span<const std::uint64_t> v) const {
    std::vector<std::uint64_t> w(v.begin(), v.end());
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        const std::uint64_t f = w[pivots_[b]];
        if (f == 0) continue;
        for (std::size_t j = pivots_[b]; j < cols_; ++j) w[j] = sub(w[j], mul(f, basis_[b][j], p_), p_);
    }
    return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
}

}  // namespace compident::modp

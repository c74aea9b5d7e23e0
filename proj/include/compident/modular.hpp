#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace compident::modp {

// 2^62 - 57, the largest prime below 2^62.
inline constexpr std::uint64_t kDefaultPrime = 4611686018427387847ULL;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t p);
std::uint64_t inverse(std::uint64_t a, std::uint64_t p);  // a != 0
std::uint64_t reduce(const mpz_class& value, std::uint64_t p);

bool is_probable_prime(std::uint64_t n);

// Rank of a dense row-major rows x cols matrix over GF(p). The matrix is
// consumed (reduced in place).
std::size_t rank(std::vector<std::uint64_t>& m, std::size_t rows, std::size_t cols, std::uint64_t p);

// Row-echelon basis for membership queries: after construction, contains()
// reports whether a vector lies in the row space.
class RowSpace {
public:
    RowSpace(std::vector<std::uint64_t> m, std::size_t rows, std::size_t cols, std::uint64_t p);
    std::size_t rank() const { return pivots_.size(); }
    bool contains(std::span<const std::uint64_t> v) const;

private:
    std::vector<std::vector<std::uint64_t>> basis_;  // normalized, pivot entry 1
    std::vector<std::size_t> pivots_;
    std::size_t cols_;
    std::uint64_t p_;
};

}  // namespace compident::modp

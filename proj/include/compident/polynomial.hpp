#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "compident/variable.hpp"

namespace compident {

// Power product of variables; exponents are strictly positive and entries are
// sorted by variable.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(Var v, std::uint32_t exponent = 1);

    std::uint32_t degree() const;
    std::uint32_t exponent(Var v) const;
    bool is_one() const { return powers_.empty(); }
    std::size_t size() const { return powers_.size(); }

    Var var_at(std::size_t i) const { return Var::from_key(static_cast<std::uint32_t>(powers_[i] >> 32)); }
    std::uint32_t exp_at(std::size_t i) const { return static_cast<std::uint32_t>(powers_[i]); }

    Monomial operator*(const Monomial& other) const;
    bool divides(const Monomial& other) const;
    // Requires divides(other): returns other / *this.
    Monomial quotient_of(const Monomial& other) const;
    // Componentwise minimum of exponents.
    static Monomial gcd(const Monomial& a, const Monomial& b);
    Monomial without(Var v) const;

    bool operator==(const Monomial&) const = default;

    std::string to_string() const;

private:
    static std::uint64_t pack(Var v, std::uint32_t e) { return (std::uint64_t{v.key()} << 32) | e; }
    void push(Var v, std::uint32_t e) { powers_.push_back(pack(v, e)); }

    boost::container::small_vector<std::uint64_t, 6> powers_;
};

// Graded lexicographic comparison: -1, 0, +1. Earlier variables in the
// canonical order are more significant.
int grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

struct Term {
    Monomial monomial;
    mpz_class coeff;
};

// Sparse multivariate polynomial over Z in canonical form: terms sorted by
// descending graded-lex order, no zero coefficients. Structural equality is
// polynomial equality.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(long value);  // NOLINT: integers convert implicitly
    explicit Polynomial(const mpz_class& value);
    explicit Polynomial(Var v);
    Polynomial(const Monomial& m, const mpz_class& c);

    static Polynomial from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
    mpz_class constant_value() const;  // requires is_constant()
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading_term() const { return terms_.front(); }

    std::uint32_t total_degree() const;
    std::uint32_t degree_in(Var v) const;
    std::vector<Var> variables() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial scaled(const mpz_class& c) const;
    Polynomial times_monomial(const Monomial& m, const mpz_class& c) const;
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& other) const;

    Polynomial partial(Var v) const;
    // Substitutes an integer for v.
    Polynomial substitute(Var v, const mpz_class& value) const;
    // Replaces variables according to `renaming`; unmapped variables stay.
    Polynomial rename(const std::map<Var, Var>& renaming) const;

    // gcd of integer coefficients (0 for the zero polynomial), always >= 0.
    mpz_class content() const;
    // Divides out the content and makes the leading coefficient positive.
    Polynomial primitive_part() const;
    Monomial monomial_content() const;
    // Quotient if `divisor` divides *this exactly over Z, else nullopt.
    std::optional<Polynomial> exact_divide(const Polynomial& divisor) const;
    Polynomial divide_monomial(const Monomial& m) const;  // requires divisibility
    Polynomial divide_integer(const mpz_class& c) const;  // requires divisibility

    // Coefficients of v^0, v^1, ..., v^deg as polynomials in the remaining variables.
    std::vector<Polynomial> coefficients_in(Var v) const;

    // e.g. "k21^2*k32 - 3*k01 + 1"; zero renders as "0".
    std::string to_string() const;

private:
    void normalize();  // sort + merge + drop zeros
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

// Parses the to_string() rendering (also accepts parentheses, '^' and unary minus).
Polynomial parse_polynomial(const std::string& text);

// k-th elementary symmetric polynomial of `items`, via the incremental
// recurrence e_k(S + x) = e_k(S) + x e_{k-1}(S). e_0 = 1, e_{-1} = 0, e_k = 0
// for k > |items|; k < -1 throws NegativeIndexBelowConvention.
Polynomial elem_sym(int k, std::span<const Polynomial> items);
// All of e_0 .. e_|items| at once.
std::vector<Polynomial> elem_sym_all(std::span<const Polynomial> items);

// Exact evaluation; throws MissingAssignment if a variable is not assigned.
std::uint64_t eval_mod(const Polynomial& p, const std::map<Var, std::uint64_t>& point, std::uint64_t prime);
mpq_class eval_rational(const Polynomial& p, const std::map<Var, mpq_class>& point);

// Greatest common divisor over Z[vars], normalized like primitive_part()
// times the gcd of the contents. Heuristic evaluation/interpolation with exact
// verification; throws GcdFailure if no evaluation point succeeds.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Polynomial prepared for repeated evaluation modulo a fixed prime at points
// given as arrays indexed by slot.
class CompiledPolynomial {
public:
    CompiledPolynomial() = default;
    // `slots` maps each variable to its index in the evaluation array; throws
    // MissingAssignment for a variable outside `slots`.
    CompiledPolynomial(const Polynomial& p, const std::map<Var, std::size_t>& slots, std::uint64_t prime);

    std::uint64_t operator()(std::span<const std::uint64_t> point) const;
    bool is_zero() const { return terms_.empty(); }

private:
    struct CompiledTerm {
        std::uint64_t coeff;
        std::uint32_t first;  // into factors_
        std::uint32_t count;
    };
    std::vector<CompiledTerm> terms_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors_;  // (slot, exponent)
    std::uint64_t prime_ = 0;
};

}  // namespace compident

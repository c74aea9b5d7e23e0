// Multivariate gcd over Z by the heuristic evaluation/interpolation scheme
// (Char, Geddes, Gonnet): substitute a large integer for one variable,
// recurse, rebuild the candidate from its balanced base-x digits, and accept
// it only after exact trial division.

#include <algorithm>

#include "compident/error.hpp"
#include "compident/polynomial.hpp"

namespace compident {

namespace {

constexpr int kMaxAttempts = 8;

mpz_class max_norm(const Polynomial& p) {
    mpz_class m = 0;
    for (const auto& t : p.terms()) {
        mpz_class a = abs(t.coeff);
        if (a > m) m = a;
    }
    return m;
}

Polynomial sign_normalized(const Polynomial& p) {
    if (!p.is_zero() && p.leading_term().coeff < 0) return -p;
    return p;
}

// Balanced residue of every coefficient modulo x.
Polynomial symmetric_mod(const Polynomial& h, const mpz_class& x) {
    std::vector<Term> out;
    const mpz_class half = x / 2;
    for (const auto& t : h.terms()) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_mpz_t(), x.get_mpz_t());
        if (r > half) r -= x;
        if (r != 0) out.push_back({t.monomial, r});
    }
    return Polynomial::from_terms(std::move(out));
}

// Recovers G(v) from h = G(x) via balanced base-x digits.
Polynomial interpolate(Polynomial h, const mpz_class& x, Var v) {
    Polynomial result;
    std::uint32_t k = 0;
    while (!h.is_zero()) {
        Polynomial digit = symmetric_mod(h, x);
        h -= digit;
        h = h.divide_integer(x);
        result += digit.times_monomial(Monomial(v, k), mpz_class(1));
        ++k;
    }
    return result;
}

bool divides_both(const Polynomial& g, const Polynomial& a, const Polynomial& b) {
    return a.exact_divide(g).has_value() && b.exact_divide(g).has_value();
}

Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b);

// gcd of the coefficients of p viewed as a polynomial in v.
Polynomial content_in(const Polynomial& p, Var v, const Polynomial& seed) {
    Polynomial g = seed;
    for (const auto& c : p.coefficients_in(v)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

// a, b primitive over Z with trivial monomial content.
Polynomial gcd_primitive(const Polynomial& a, const Polynomial& b) {
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    if (sign_normalized(a) == sign_normalized(b)) return sign_normalized(a);

    const auto va = a.variables();
    const auto vb = b.variables();
    // A variable present in only one argument cannot occur in the gcd.
    for (Var v : va) {
        if (!std::binary_search(vb.begin(), vb.end(), v)) return content_in(a, v, b).primitive_part();
    }
    for (Var v : vb) {
        if (!std::binary_search(va.begin(), va.end(), v)) return content_in(b, v, a).primitive_part();
    }

    if (a.term_count() <= b.term_count()) {
        if (b.exact_divide(a)) return sign_normalized(a);
    } else if (a.exact_divide(b)) {
        return sign_normalized(b);
    }

    const Var v = va.front();
    const mpz_class na = max_norm(a);
    const mpz_class nb = max_norm(b);
    const mpz_class bound = 2 * std::min(na, nb) + 29;
    mpz_class x = std::min(bound, mpz_class(99 * sqrt(bound)));
    const mpz_class la = abs(a.leading_term().coeff);
    const mpz_class lb = abs(b.leading_term().coeff);
    x = std::max(x, mpz_class(2 * std::min(mpz_class(na / la), mpz_class(nb / lb)) + 2));

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const Polynomial ax = a.substitute(v, x);
        const Polynomial bx = b.substitute(v, x);
        if (!ax.is_zero() && !bx.is_zero()) {
            const Polynomial h = gcd(ax, bx);
            Polynomial candidate = interpolate(h, x, v).primitive_part();
            if (!candidate.is_zero() && divides_both(candidate, a, b)) return candidate;

            if (auto cofactor = ax.exact_divide(h)) {
                const Polynomial cf = interpolate(*cofactor, x, v);
                if (auto g = a.exact_divide(cf); g && !g->is_zero()) {
                    Polynomial pg = g->primitive_part();
                    if (b.exact_divide(pg)) return pg;
                }
            }
            if (auto cofactor = bx.exact_divide(h)) {
                const Polynomial cf = interpolate(*cofactor, x, v);
                if (auto g = b.exact_divide(cf); g && !g->is_zero()) {
                    Polynomial pg = g->primitive_part();
                    if (a.exact_divide(pg)) return pg;
                }
            }
        }
        mpz_class root = sqrt(sqrt(x));
        x = 73794 * x * root / 27011;
    }
    throw GcdFailure("heuristic gcd did not converge for polynomials with " + std::to_string(a.term_count()) +
                     " and " + std::to_string(b.term_count()) + " terms");
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return sign_normalized(b);
    if (b.is_zero()) return sign_normalized(a);
    const mpz_class ca = a.content();
    const mpz_class cb = b.content();
    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    const Monomial ma = a.monomial_content();
    const Monomial mb = b.monomial_content();
    const Monomial mg = Monomial::gcd(ma, mb);
    const Polynomial ap = a.divide_integer(ca).divide_monomial(ma);
    const Polynomial bp = b.divide_integer(cb).divide_monomial(mb);
    return gcd_primitive(ap, bp).times_monomial(mg, cg);
}

}  // namespace compident

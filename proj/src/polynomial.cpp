#include "compident/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "compident/error.hpp"
#include "compident/modular.hpp"

namespace compident {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Var v, std::uint32_t exponent) {
    if (exponent > 0) push(v, exponent);
}

std::uint32_t Monomial::degree() const {
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < powers_.size(); ++i) d += exp_at(i);
    return d;
}

std::uint32_t Monomial::exponent(Var v) const {
    for (std::size_t i = 0; i < powers_.size(); ++i) {
        if (var_at(i) == v) return exp_at(i);
    }
    return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < size() && j < other.size()) {
        const Var a = var_at(i);
        const Var b = other.var_at(j);
        if (a == b) {
            out.push(a, exp_at(i) + other.exp_at(j));
            ++i;
            ++j;
        } else if (a < b) {
            out.powers_.push_back(powers_[i++]);
        } else {
            out.powers_.push_back(other.powers_[j++]);
        }
    }
    for (; i < size(); ++i) out.powers_.push_back(powers_[i]);
    for (; j < other.size(); ++j) out.powers_.push_back(other.powers_[j]);
    return out;
}

bool Monomial::divides(const Monomial& other) const {
    std::size_t j = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        const Var v = var_at(i);
        while (j < other.size() && other.var_at(j) < v) ++j;
        if (j == other.size() || other.var_at(j) != v || other.exp_at(j) < exp_at(i)) return false;
    }
    return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
    Monomial out;
    std::size_t i = 0;
    for (std::size_t j = 0; j < other.size(); ++j) {
        const Var v = other.var_at(j);
        std::uint32_t e = other.exp_at(j);
        if (i < size() && var_at(i) == v) e -= exp_at(i++);
        if (e > 0) out.push(v, e);
    }
    return out;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Var v = a.var_at(i);
        while (j < b.size() && b.var_at(j) < v) ++j;
        if (j < b.size() && b.var_at(j) == v) out.push(v, std::min(a.exp_at(i), b.exp_at(j)));
    }
    return out;
}

Monomial Monomial::without(Var v) const {
    Monomial out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (var_at(i) != v) out.powers_.push_back(powers_[i]);
    }
    return out;
}

std::string Monomial::to_string() const {
    if (is_one()) return "1";
    std::string s;
    for (std::size_t i = 0; i < size(); ++i) {
        if (i > 0) s += '*';
        s += var_at(i).name();
        if (exp_at(i) > 1) s += '^' + std::to_string(exp_at(i));
    }
    return s;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
    const std::uint32_t da = a.degree();
    const std::uint32_t db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    std::size_t i = 0;
    while (i < a.size() && i < b.size()) {
        const Var va = a.var_at(i);
        const Var vb = b.var_at(i);
        if (va != vb) return va < vb ? 1 : -1;
        if (a.exp_at(i) != b.exp_at(i)) return a.exp_at(i) > b.exp_at(i) ? 1 : -1;
        ++i;
    }
    if (i < a.size()) return 1;
    if (i < b.size()) return -1;
    return 0;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(long value) {
    if (value != 0) terms_.push_back({Monomial{}, mpz_class(value)});
}

Polynomial::Polynomial(const mpz_class& value) {
    if (value != 0) terms_.push_back({Monomial{}, value});
}

Polynomial::Polynomial(Var v) { terms_.push_back({Monomial(v), mpz_class(1)}); }

Polynomial::Polynomial(const Monomial& m, const mpz_class& c) {
    if (c != 0) terms_.push_back({m, c});
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
}

void Polynomial::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return grlex_compare(a.monomial, b.monomial) > 0; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().monomial == t.monomial) {
            merged.back().coeff += t.coeff;
        } else {
            if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
            merged.push_back(std::move(t));
        }
    }
    if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
    terms_ = std::move(merged);
}

mpz_class Polynomial::constant_value() const { return terms_.empty() ? mpz_class(0) : terms_[0].coeff; }

std::uint32_t Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }

std::uint32_t Polynomial::degree_in(Var v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial.exponent(v));
    return d;
}

std::vector<Var> Polynomial::variables() const {
    std::vector<Var> vars;
    for (const auto& t : terms_) {
        for (std::size_t i = 0; i < t.monomial.size(); ++i) vars.push_back(t.monomial.var_at(i));
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

namespace {

// Merge of two canonical term lists; sign = +1 or -1 applied to b.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        const int c = grlex_compare(a[i].monomial, b[j].monomial);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (sign < 0) out.back().coeff = -out.back().coeff;
        } else {
            mpz_class s = a[i].coeff;
            if (sign > 0) s += b[j].coeff; else s -= b[j].coeff;
            if (s != 0) out.push_back({a[i].monomial, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) {
        out.push_back(b[j]);
        if (sign < 0) out.back().coeff = -out.back().coeff;
    }
    return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    terms_ = merge_terms(terms_, other.terms_, +1);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    terms_ = merge_terms(terms_, other.terms_, -1);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial{};
    if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].monomial, a.terms_[0].coeff);
    if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].monomial, b.terms_[0].coeff);
    std::vector<Term> products;
    products.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_) {
        for (const auto& t : b.terms_) products.push_back({s.monomial * t.monomial, s.coeff * t.coeff});
    }
    return Polynomial::from_terms(std::move(products));
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
    *this = *this * other;
    return *this;
}

Polynomial Polynomial::scaled(const mpz_class& c) const {
    if (c == 0) return Polynomial{};
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const mpz_class& c) const {
    if (c == 0) return Polynomial{};
    // Multiplying by a monomial preserves graded-lex order.
    Polynomial out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.monomial * m, t.coeff * c});
    return out;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return result;
}

bool Polynomial::operator==(const Polynomial& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coeff != other.terms_[i].coeff || !(terms_[i].monomial == other.terms_[i].monomial)) {
            return false;
        }
    }
    return true;
}

Polynomial Polynomial::partial(Var v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        const std::uint32_t e = t.monomial.exponent(v);
        if (e == 0) continue;
        Monomial m = t.monomial.without(v);
        if (e > 1) m = m * Monomial(v, e - 1);
        out.push_back({std::move(m), t.coeff * e});
    }
    return from_terms(std::move(out));
}

Polynomial Polynomial::substitute(Var v, const mpz_class& value) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        const std::uint32_t e = t.monomial.exponent(v);
        if (e == 0) {
            out.push_back(t);
            continue;
        }
        mpz_class factor;
        mpz_pow_ui(factor.get_mpz_t(), value.get_mpz_t(), e);
        out.push_back({t.monomial.without(v), t.coeff * factor});
    }
    return from_terms(std::move(out));
}

Polynomial Polynomial::rename(const std::map<Var, Var>& renaming) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m;
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            Var v = t.monomial.var_at(i);
            if (auto it = renaming.find(v); it != renaming.end()) v = it->second;
            m = m * Monomial(v, t.monomial.exp_at(i));
        }
        out.push_back({std::move(m), t.coeff});
    }
    return from_terms(std::move(out));
}

mpz_class Polynomial::content() const {
    mpz_class g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Polynomial Polynomial::primitive_part() const {
    if (is_zero()) return *this;
    mpz_class c = content();
    if (terms_.front().coeff < 0) c = -c;
    return divide_integer(c);
}

Monomial Polynomial::monomial_content() const {
    if (terms_.empty()) return Monomial{};
    Monomial g = terms_.front().monomial;
    for (const auto& t : terms_) {
        if (g.is_one()) break;
        g = Monomial::gcd(g, t.monomial);
    }
    return g;
}

Polynomial Polynomial::divide_integer(const mpz_class& c) const {
    if (c == 1) return *this;
    Polynomial out = *this;
    for (auto& t : out.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    return out;
}

Polynomial Polynomial::divide_monomial(const Monomial& m) const {
    if (m.is_one()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({m.quotient_of(t.monomial), t.coeff});
    return from_terms(std::move(out));
}

std::optional<Polynomial> Polynomial::exact_divide(const Polynomial& divisor) const {
    if (divisor.is_zero()) return std::nullopt;
    if (is_zero()) return Polynomial{};
    const Term& lead = divisor.terms_.front();
    if (divisor.terms_.size() == 1) {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (!lead.monomial.divides(t.monomial)) return std::nullopt;
            if (!mpz_divisible_p(t.coeff.get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), t.coeff.get_mpz_t(), lead.coeff.get_mpz_t());
            out.push_back({lead.monomial.quotient_of(t.monomial), std::move(q)});
        }
        Polynomial p;
        p.terms_ = std::move(out);
        return p;
    }
    for (Var v : divisor.variables()) {
        if (divisor.degree_in(v) > degree_in(v)) return std::nullopt;
    }
    Polynomial remainder = *this;
    std::vector<Term> quotient;
    while (!remainder.is_zero()) {
        const Term& r = remainder.terms_.front();
        if (!lead.monomial.divides(r.monomial)) return std::nullopt;
        if (!mpz_divisible_p(r.coeff.get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), r.coeff.get_mpz_t(), lead.coeff.get_mpz_t());
        Monomial qm = lead.monomial.quotient_of(r.monomial);
        remainder -= divisor.times_monomial(qm, q);
        quotient.push_back({std::move(qm), std::move(q)});
    }
    Polynomial p;
    p.terms_ = std::move(quotient);  // generated in descending order
    return p;
}

std::vector<Polynomial> Polynomial::coefficients_in(Var v) const {
    std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
    for (const auto& t : terms_) {
        const std::uint32_t e = t.monomial.exponent(v);
        buckets[e].push_back({t.monomial.without(v), t.coeff});
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
        const bool negative = t.coeff < 0;
        mpz_class mag = abs(t.coeff);
        if (first) {
            if (negative) s += '-';
        } else {
            s += negative ? " - " : " + ";
        }
        first = false;
        if (t.monomial.is_one()) {
            s += mag.get_str();
        } else {
            if (mag != 1) s += mag.get_str() + "*";
            s += t.monomial.to_string();
        }
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

// ------------------------------------------------------------------ parser

namespace {

class PolyParser {
public:
    explicit PolyParser(const std::string& text) : text_(text) {}

    Polynomial parse() {
        Polynomial p = expression();
        skip();
        if (pos_ != text_.size()) fail("unexpected character");
        return p;
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
    }

    Polynomial expression() {
        Polynomial p = term();
        for (;;) {
            if (accept('+')) {
                p += term();
            } else if (accept('-')) {
                p -= term();
            } else {
                return p;
            }
        }
    }
    Polynomial term() {
        Polynomial p = factor();
        while (accept('*')) p *= factor();
        return p;
    }
    Polynomial factor() {
        if (accept('-')) return -factor();
        Polynomial base = primary();
        if (accept('^')) {
            skip();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(text_.substr(start, pos_ - start))));
        }
        return base;
    }
    Polynomial primary() {
        skip();
        if (accept('(')) {
            Polynomial p = expression();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (pos_ >= text_.size()) fail("unexpected end");
        const std::size_t start = pos_;
        if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return Polynomial(mpz_class(text_.substr(start, pos_ - start)));
        }
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) fail("expected operand");
        return Polynomial(parse_var(text_.substr(start, pos_ - start)));
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text) { return PolyParser(text).parse(); }

// -------------------------------------------------- elementary symmetric

std::vector<Polynomial> elem_sym_all(std::span<const Polynomial> items) {
    std::vector<Polynomial> e(items.size() + 1);
    e[0] = Polynomial(1);
    for (std::size_t t = 0; t < items.size(); ++t) {
        for (std::size_t k = t + 1; k >= 1; --k) e[k] += items[t] * e[k - 1];
    }
    return e;
}

Polynomial elem_sym(int k, std::span<const Polynomial> items) {
    if (k < -1) throw NegativeIndexBelowConvention("elementary symmetric index " + std::to_string(k) + " < -1");
    if (k == -1) return Polynomial{};
    if (static_cast<std::size_t>(k) > items.size()) return Polynomial{};
    const auto top = static_cast<std::size_t>(k);
    std::vector<Polynomial> e(top + 1);
    e[0] = Polynomial(1);
    for (std::size_t t = 0; t < items.size(); ++t) {
        for (std::size_t j = std::min(t + 1, top); j >= 1; --j) e[j] += items[t] * e[j - 1];
    }
    return e[top];
}

// --------------------------------------------------------------- evaluation

std::uint64_t eval_mod(const Polynomial& p, const std::map<Var, std::uint64_t>& point, std::uint64_t prime) {
    std::uint64_t acc = 0;
    for (const auto& t : p.terms()) {
        std::uint64_t v = modp::reduce(t.coeff, prime);
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            auto it = point.find(t.monomial.var_at(i));
            if (it == point.end()) throw MissingAssignment("no value for " + t.monomial.var_at(i).name());
            v = modp::mul(v, modp::pow(it->second % prime, t.monomial.exp_at(i), prime), prime);
        }
        acc = modp::add(acc, v, prime);
    }
    return acc;
}

mpq_class eval_rational(const Polynomial& p, const std::map<Var, mpq_class>& point) {
    mpq_class acc = 0;
    for (const auto& t : p.terms()) {
        mpq_class v(t.coeff);
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            auto it = point.find(t.monomial.var_at(i));
            if (it == point.end()) throw MissingAssignment("no value for " + t.monomial.var_at(i).name());
            mpq_class base = it->second;
            base.canonicalize();
            for (std::uint32_t e = 0; e < t.monomial.exp_at(i); ++e) v *= base;
        }
        acc += v;
    }
    return acc;
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p, const std::map<Var, std::size_t>& slots,
                                       std::uint64_t prime)
    : prime_(prime) {
    for (const auto& t : p.terms()) {
        const std::uint64_t c = modp::reduce(t.coeff, prime);
        if (c == 0) continue;
        CompiledTerm ct{c, static_cast<std::uint32_t>(factors_.size()), static_cast<std::uint32_t>(t.monomial.size())};
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
            auto it = slots.find(t.monomial.var_at(i));
            if (it == slots.end()) throw MissingAssignment("no slot for " + t.monomial.var_at(i).name());
            factors_.emplace_back(static_cast<std::uint32_t>(it->second), t.monomial.exp_at(i));
        }
        terms_.push_back(ct);
    }
}

std::uint64_t CompiledPolynomial::operator()(std::span<const std::uint64_t> point) const {
    std::uint64_t acc = 0;
    for (const auto& t : terms_) {
        std::uint64_t v = t.coeff;
        for (std::uint32_t f = t.first; f < t.first + t.count; ++f) {
            const auto [slot, e] = factors_[f];
            std::uint64_t x = point[slot];
            for (std::uint32_t k = 0; k < e; ++k) v = modp::mul(v, x, prime_);
        }
        acc = modp::add(acc, v, prime_);
    }
    return acc;
}

}  // namespace compident

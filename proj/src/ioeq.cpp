#include "compident/ioeq.hpp"

#include <set>

#include "compident/error.hpp"

namespace compident {

std::string CoefficientLabel::to_string() const {
    std::string out = side == Side::Lhs
                          ? "y" + std::to_string(output) + "^(" + std::to_string(order) + ")"
                          : "u" + std::to_string(input) + "^(" + std::to_string(order) + ")@y" + std::to_string(output);
    if (!tag.empty()) out += ":" + tag;
    return out;
}

SymbolicMatrix characteristic_matrix(const CompartmentalModel& model) {
    SymbolicMatrix m = compartmental_matrix(model);
    const Polynomial s(Var::op_s());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
        m(r, r) += s;
    }
    return m;
}

namespace {

// Coefficients of s^(len-1), ..., s^0.
std::vector<Polynomial> descending_in_s(const Polynomial& p, std::size_t len) {
    auto asc = p.coefficients_in(Var::op_s());
    if (asc.size() > len) throw PreconditionViolated("unexpected degree in s");
    asc.resize(len);
    return {asc.rbegin(), asc.rend()};
}

}  // namespace

IoEquation io_equation(const CompartmentalModel& model, int i) {
    if (!model.outputs().contains(i)) throw NotAnOutput("compartment " + std::to_string(i) + " is not an output");
    const SymbolicMatrix m = characteristic_matrix(model);
    const std::size_t n = m.rows();
    IoEquation eq;
    eq.output = i;
    eq.lhs = descending_in_s(determinant(m), n + 1);
    for (int j : model.inputs()) {
        Polynomial cof = n == 1 ? Polynomial(1) : determinant(m.without(j - 1, i - 1));
        if ((i + j) % 2) cof = -cof;
        eq.rhs.emplace(j, descending_in_s(cof, n));
    }
    return eq;
}

std::vector<IoEquation> io_equations(const CompartmentalModel& model) {
    std::vector<IoEquation> out;
    for (int i : model.outputs()) out.push_back(io_equation(model, i));
    return out;
}

CoefficientMap coefficient_map(const std::vector<IoEquation>& equations) {
    CoefficientMap cm;
    std::vector<const Polynomial*> seen;
    auto add = [&](CoefficientLabel label, const Polynomial& p) {
        if (p.is_constant()) return;
        for (const Polynomial* q : seen) {
            if (*q == p) return;
        }
        cm.push(std::move(label), p);
        seen.push_back(&cm.coeffs.back());
    };
    // Pointers into cm.coeffs would dangle on reallocation; reserve up front.
    std::size_t total = 0;
    for (const auto& eq : equations) {
        total += eq.lhs.size();
        for (const auto& [j, r] : eq.rhs) total += r.size();
    }
    cm.coeffs.reserve(total);
    cm.labels.reserve(total);
    for (const auto& eq : equations) {
        const int n = static_cast<int>(eq.lhs.size()) - 1;
        for (int k = 1; k <= n; ++k) add({eq.output, CoefficientLabel::Side::Lhs, 0, n - k, {}}, eq.lhs[k]);
        for (const auto& [j, r] : eq.rhs) {
            for (int k = 0; k < n; ++k) add({eq.output, CoefficientLabel::Side::Rhs, j, n - 1 - k, {}}, r[k]);
        }
    }
    return cm;
}

CoefficientMap coefficient_map(const CompartmentalModel& model) { return coefficient_map(io_equations(model)); }

IoEquation restrict_inputs(const IoEquation& eq, const std::set<int>& inputs) {
    IoEquation out;
    out.output = eq.output;
    out.lhs = eq.lhs;
    for (int j : inputs) {
        auto it = eq.rhs.find(j);
        if (it == eq.rhs.end()) throw NotAnInput("compartment " + std::to_string(j) + " has no rhs entry");
        out.rhs.emplace(j, it->second);
    }
    return out;
}

namespace {

std::string wrap(const Polynomial& p) {
    if (p.term_count() <= 1) return p.to_string();
    return "(" + p.to_string() + ")";
}

void append_term(std::string& out, const Polynomial& c, const std::string& symbol) {
    if (c.is_zero()) return;
    std::string body;
    if (c == Polynomial(1)) {
        body = symbol;
    } else if (c == Polynomial(-1)) {
        body = "-" + symbol;
    } else {
        body = wrap(c) + "*" + symbol;
    }
    if (out.empty()) {
        out = body;
    } else if (body[0] == '-') {
        out += " - " + body.substr(1);
    } else {
        out += " + " + body;
    }
}

}  // namespace

std::string format_io_equation(const IoEquation& eq) {
    const int n = static_cast<int>(eq.lhs.size()) - 1;
    std::string left;
    for (int k = 0; k <= n; ++k) {
        append_term(left, eq.lhs[k], "y" + std::to_string(eq.output) + "^(" + std::to_string(n - k) + ")");
    }
    std::string right;
    for (const auto& [j, r] : eq.rhs) {
        for (int k = 0; k < n; ++k) append_term(right, r[k], "u" + std::to_string(j) + "^(" + std::to_string(n - 1 - k) + ")");
    }
    if (right.empty()) right = "0";
    return left + " = " + right;
}

}  // namespace compident

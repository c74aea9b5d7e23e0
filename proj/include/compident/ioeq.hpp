#pragma once

#include <map>
#include <string>
#include <vector>

#include "compident/model.hpp"
#include "compident/polynomial.hpp"

namespace compident {

// det(sI - A) y_i = sum_j (-1)^(i+j) det((sI - A)^{j,i}) u_j for one output i.
struct IoEquation {
    int output = 0;
    // Coefficients of y_i^(n), ..., y_i^(0); lhs[0] == 1.
    std::vector<Polynomial> lhs;
    // For each input j: coefficients of u_j^(n-1), ..., u_j^(0), sign included.
    std::map<int, std::vector<Polynomial>> rhs;

    bool operator==(const IoEquation&) const = default;
};

struct CoefficientLabel {
    enum class Side { Lhs, Rhs };
    int output = 0;
    Side side = Side::Lhs;
    int input = 0;  // 0 on the lhs
    int order = 0;  // derivative order of y (lhs) or u (rhs)
    std::string tag;  // optional family tag, e.g. the closed-form coefficient type

    // "y2^(1)" / "u1^(0)@y2", plus ":" + tag when tagged.
    std::string to_string() const;
    bool operator==(const CoefficientLabel&) const = default;
};

struct CoefficientMap {
    std::vector<CoefficientLabel> labels;
    std::vector<Polynomial> coeffs;

    std::size_t size() const { return coeffs.size(); }
    void push(CoefficientLabel label, Polynomial p) {
        labels.push_back(std::move(label));
        coeffs.push_back(std::move(p));
    }
};

// Symbolic sI - A with s = Var::op_s().
SymbolicMatrix characteristic_matrix(const CompartmentalModel& model);

// Throws NotAnOutput when i is not an output.
IoEquation io_equation(const CompartmentalModel& model, int i);
// One equation per output, ascending.
std::vector<IoEquation> io_equations(const CompartmentalModel& model);

// Non-constant coefficients of the equations: per output lhs orders n-1..0,
// then each input's rhs orders n-1..0. Structurally equal polynomials are
// kept once (first occurrence wins).
CoefficientMap coefficient_map(const std::vector<IoEquation>& equations);
CoefficientMap coefficient_map(const CompartmentalModel& model);

// Keeps only the rhs entries of the given inputs.
IoEquation restrict_inputs(const IoEquation& eq, const std::set<int>& inputs);

// y2^(3) + (k01 + ...)*y2^(2) + ... = k21*u1^(1) + ...
std::string format_io_equation(const IoEquation& eq);

}  // namespace compident

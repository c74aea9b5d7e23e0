#pragma once

#include <set>
#include <vector>

#include "compident/ioeq.hpp"
#include "compident/model.hpp"
#include "compident/polynomial.hpp"

namespace compident {

// Nonempty subsets of [n-1] with no two consecutive elements, ordered by size
// and then lexicographically. There are Fib(n+1) - 1 of them.
std::vector<std::set<int>> gamma_sets(int n);

// Sum of the outgoing edge parameters and the leak parameter at l.
// Throws NotCatenary.
Polynomial out_sum(const CompartmentalModel& model, int l);

// prod_{i in I} k_{i,i+1} k_{i+1,i}
Polynomial kappa_I(const std::set<int>& I);
// I together with {i + 1 : i in I}.
std::set<int> i_plus(const std::set<int>& I);

// k_{in+1,in} ... k_{out,out-1}; 1 when in == out.
Polynomial catenary_path_product(int in, int out);

// Sign of the Gamma-indexed correction terms. Literal subtracts each term
// once, which double counts subgraphs holding two or more disjoint 2-cycles
// (first visible at n = 4); Alternating weights I by (-1)^(|I|+1) and agrees
// with the determinant.
enum class CorrectionSign { Alternating, Literal };

// Closed-form map a_1..a_n, then at_d..at_n, with d = out - in. Entry a_i is
// the coefficient of y^(n-i); at_i that of u^(n-i-1), so at_n is always the
// zero polynomial (order -1). Requires one input, one output, in <= out;
// throws NotCatenary or PreconditionViolated. The RHS correction only ranges
// over I whose I+ avoids the path {in..out}.
CoefficientMap catenary_coefficient_map(const CompartmentalModel& model,
                                        CorrectionSign sign = CorrectionSign::Alternating);

// Mirror image i -> n + 1 - i.
std::vector<int> reflection(int n);
CompartmentalModel reflect(const CompartmentalModel& model);

}  // namespace compident

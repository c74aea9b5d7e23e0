#pragma once

#include <string>
#include <vector>

#include "compident/ioeq.hpp"
#include "compident/model.hpp"

namespace compident {

enum class Route { Determinant, Forests, ClosedForm };
std::string to_string(Route route);  // "determinant", "forests", "closed-form"
Route parse_route(const std::string& text);  // throws PreconditionViolated

// Coefficient map from forest sums, laid out like coefficient_map(model).
CoefficientMap forest_coefficient_map(const CompartmentalModel& model);

// Closed form for one-input one-output cycles (any input, any leak set) and
// catenaries (reflected first when in > out). Throws NotApplicable otherwise.
CoefficientMap closed_form_coefficient_map(const CompartmentalModel& model);

CoefficientMap coefficient_map_via(const CompartmentalModel& model, Route route);

// Difference of two maps as sets of non-constant polynomials.
struct RouteDiff {
    std::vector<Polynomial> only_left;
    std::vector<Polynomial> only_right;
    bool equal() const { return only_left.empty() && only_right.empty(); }
};
RouteDiff compare_maps(const CoefficientMap& left, const CoefficientMap& right);

}  // namespace compident

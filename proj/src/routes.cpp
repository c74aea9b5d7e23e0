#include "compident/routes.hpp"

#include <algorithm>

#include "compident/catenary.hpp"
#include "compident/cycle.hpp"
#include "compident/error.hpp"
#include "compident/forests.hpp"

namespace compident {

std::string to_string(Route route) {
    switch (route) {
    case Route::Determinant: return "determinant";
    case Route::Forests: return "forests";
    case Route::ClosedForm: return "closed-form";
    }
    return "?";
}

Route parse_route(const std::string& text) {
    if (text == "determinant") return Route::Determinant;
    if (text == "forests") return Route::Forests;
    if (text == "closed-form") return Route::ClosedForm;
    throw PreconditionViolated("unknown route '" + text + "'");
}

CoefficientMap forest_coefficient_map(const CompartmentalModel& model) {
    std::vector<IoEquation> eqs;
    for (int i : model.outputs()) {
        IoEquation eq;
        eq.output = i;
        for (int j : model.inputs()) {
            auto fc = coeff_via_forests(model, i, j);
            if (eq.lhs.empty()) eq.lhs = std::move(fc.lhs);
            eq.rhs.emplace(j, std::move(fc.rhs));
        }
        eqs.push_back(std::move(eq));
    }
    return coefficient_map(eqs);
}

CoefficientMap closed_form_coefficient_map(const CompartmentalModel& model) {
    if (model.inputs().size() != 1 || model.outputs().size() != 1) {
        throw NotApplicable("closed forms cover one input and one output only");
    }
    const Shape shape = shape_of(model).shape;
    if (shape == Shape::DirectedCycle) return cycle_coefficient_map_any_input(model, true);
    if (shape != Shape::Catenary) throw NotApplicable("no closed form for shape " + to_string(shape));

    const int in = *model.inputs().begin();
    const int out = *model.outputs().begin();
    if (in <= out) return catenary_coefficient_map(model);
    const int n = model.n();
    const auto perm = reflection(n);
    const auto mirrored = reflect(model);
    const auto back = parameter_renaming(mirrored, perm);
    CoefficientMap cm = catenary_coefficient_map(mirrored);
    for (auto& l : cm.labels) {
        l.output = perm[l.output];
        if (l.input != 0) l.input = perm[l.input];
    }
    for (auto& p : cm.coeffs) p = p.rename(back);
    return cm;
}

CoefficientMap coefficient_map_via(const CompartmentalModel& model, Route route) {
    switch (route) {
    case Route::Determinant: return coefficient_map(model);
    case Route::Forests: return forest_coefficient_map(model);
    case Route::ClosedForm: return closed_form_coefficient_map(model);
    }
    return {};
}

namespace {

std::vector<Polynomial> non_constant_set(const CoefficientMap& cm) {
    std::vector<std::pair<std::string, Polynomial>> keyed;
    for (const auto& p : cm.coeffs) {
        if (!p.is_constant()) keyed.emplace_back(p.to_string(), p);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    std::vector<Polynomial> out;
    for (auto& [k, p] : keyed) out.push_back(std::move(p));
    return out;
}

}  // namespace

RouteDiff compare_maps(const CoefficientMap& left, const CoefficientMap& right) {
    const auto a = non_constant_set(left);
    const auto b = non_constant_set(right);
    RouteDiff d;
    for (const auto& p : a) {
        if (std::find(b.begin(), b.end(), p) == b.end()) d.only_left.push_back(p);
    }
    for (const auto& p : b) {
        if (std::find(a.begin(), a.end(), p) == a.end()) d.only_right.push_back(p);
    }
    return d;
}

}  // namespace compident

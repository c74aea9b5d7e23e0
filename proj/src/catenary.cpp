#include "compident/catenary.hpp"

#include <algorithm>

#include "compident/error.hpp"

namespace compident {

std::vector<std::set<int>> gamma_sets(int n) {
    std::vector<std::set<int>> out;
    const int m = n - 1;
    if (m <= 0) return out;
    // Grow no-consecutive sets element by element, largest element last.
    std::vector<std::set<int>> frontier;
    for (int i = 1; i <= m; ++i) frontier.push_back({i});
    while (!frontier.empty()) {
        out.insert(out.end(), frontier.begin(), frontier.end());
        std::vector<std::set<int>> next;
        for (const auto& s : frontier) {
            for (int i = *s.rbegin() + 2; i <= m; ++i) {
                auto t = s;
                t.insert(i);
                next.push_back(std::move(t));
            }
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

namespace {

void require_catenary(const CompartmentalModel& model) {
    if (shape_of(model).shape != Shape::Catenary) throw NotCatenary("model is not a catenary 1 <-> 2 <-> ... <-> n");
}

}  // namespace

Polynomial out_sum(const CompartmentalModel& model, int l) {
    require_catenary(model);
    const int n = model.n();
    if (l < 1 || l > n) throw PreconditionViolated("compartment " + std::to_string(l) + " outside [1, n]");
    Polynomial sum;
    if (l > 1) sum += Polynomial(Var::edge(l, l - 1));
    if (l < n) sum += Polynomial(Var::edge(l, l + 1));
    if (model.leaks().contains(l)) sum += Polynomial(Var::leak(l));
    return sum;
}

Polynomial kappa_I(const std::set<int>& I) {
    Polynomial prod(1);
    for (int i : I) prod *= Polynomial(Var::edge(i + 1, i)) * Polynomial(Var::edge(i, i + 1));
    return prod;
}

std::set<int> i_plus(const std::set<int>& I) {
    std::set<int> out = I;
    for (int i : I) out.insert(i + 1);
    return out;
}

Polynomial catenary_path_product(int in, int out) {
    Polynomial prod(1);
    for (int q = in; q < out; ++q) prod *= Polynomial(Var::edge(q, q + 1));
    return prod;
}

namespace {

// e_k of {Out(l) : l in [n] \ excluded}; zero for k < 0.
Polynomial e_out(const std::vector<Polynomial>& outs, const std::set<int>& excluded, int k) {
    if (k < 0) return Polynomial();
    std::vector<Polynomial> items;
    for (std::size_t l = 1; l < outs.size(); ++l) {
        if (!excluded.contains(static_cast<int>(l))) items.push_back(outs[l]);
    }
    return elem_sym(k, items);
}

}  // namespace

CoefficientMap catenary_coefficient_map(const CompartmentalModel& model, CorrectionSign sign) {
    require_catenary(model);
    if (model.inputs().size() != 1 || model.outputs().size() != 1) {
        throw PreconditionViolated("closed form needs exactly one input and one output");
    }
    const int n = model.n();
    const int in = *model.inputs().begin();
    const int out = *model.outputs().begin();
    if (in > out) throw PreconditionViolated("closed form needs in <= out; reflect the model first");
    const int d = out - in;

    std::vector<Polynomial> outs(n + 1);
    for (int l = 1; l <= n; ++l) outs[l] = out_sum(model, l);
    const auto gamma = gamma_sets(n);
    std::vector<Polynomial> kappas;
    std::vector<std::set<int>> pluses;
    for (const auto& I : gamma) {
        kappas.push_back(kappa_I(I));
        pluses.push_back(i_plus(I));
    }

    // Inclusion-exclusion over the 2-cycles present; Literal subtracts every term.
    auto weight = [&](std::size_t g) {
        return sign == CorrectionSign::Literal || gamma[g].size() % 2 == 1 ? mpz_class(-1) : mpz_class(1);
    };

    CoefficientMap cm;
    for (int i = 1; i <= n; ++i) {
        Polynomial a = e_out(outs, {}, i);
        for (std::size_t g = 0; g < gamma.size(); ++g) {
            const int rest = i - 2 * static_cast<int>(gamma[g].size());
            if (rest < 0) continue;
            a += kappas[g] * e_out(outs, pluses[g], rest) * Polynomial(weight(g));
        }
        cm.push({out, CoefficientLabel::Side::Lhs, 0, n - i, "a" + std::to_string(i)}, std::move(a));
    }

    std::set<int> path;
    for (int q = in; q <= out; ++q) path.insert(q);
    const Polynomial kappa = catenary_path_product(in, out);
    for (int i = d; i <= n; ++i) {
        Polynomial inner = e_out(outs, path, i - d);
        for (std::size_t g = 0; g < gamma.size(); ++g) {
            // The 2-cycle vertices I+ must avoid P, not just I itself.
            const bool disjoint = std::none_of(pluses[g].begin(), pluses[g].end(), [&](int v) { return path.contains(v); });
            if (!disjoint) continue;
            const int rest = i - d - 2 * static_cast<int>(gamma[g].size());
            if (rest < 0) continue;
            auto excluded = pluses[g];
            excluded.insert(path.begin(), path.end());
            inner += kappas[g] * e_out(outs, excluded, rest) * Polynomial(weight(g));
        }
        cm.push({out, CoefficientLabel::Side::Rhs, in, n - i - 1, "at" + std::to_string(i)}, kappa * inner);
    }
    return cm;
}

std::vector<int> reflection(int n) {
    std::vector<int> perm(n + 1, 0);
    for (int q = 1; q <= n; ++q) perm[q] = n + 1 - q;
    return perm;
}

CompartmentalModel reflect(const CompartmentalModel& model) { return model.relabeled(reflection(model.n())); }

}  // namespace compident

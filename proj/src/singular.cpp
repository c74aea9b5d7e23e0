#include "compident/singular.hpp"

#include <algorithm>
#include <sstream>

#include "compident/cycle.hpp"
#include "compident/error.hpp"
#include "compident/ioeq.hpp"

namespace compident {

namespace {

Polynomial sign_normalized(Polynomial p) {
    if (!p.is_zero() && p.leading_term().coeff < 0) return -p;
    return p;
}

Polynomial edge_poly(int from, int to) { return Polynomial(Var::edge(from, to)); }

// kt_i of a cycle: the outgoing sum at i.
Polynomial cycle_out(const CompartmentalModel& model, int i) {
    Polynomial s = edge_poly(i, mod_n(i + 1, model.n()));
    if (model.leaks().contains(i)) s += Polynomial(Var::leak(i));
    return s;
}

// Visits every k-subset of [0, n) in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

void require_identifiable(const SymbolicMatrix& j, const RankOptions& options) {
    if (generic_rank(j, options) < j.cols()) {
        throw NotIdentifiable("Jacobian is rank deficient everywhere; the singular locus is the whole space");
    }
}

}  // namespace

Hyperplane make_hyperplane(Polynomial h, std::string tag) {
    if (h.total_degree() != 1) throw PreconditionViolated("hyperplane form must have total degree 1: " + h.to_string());
    return {std::move(h), std::move(tag)};
}

SingularLocus singular_locus(const CompartmentalModel& model, const RankOptions& options) {
    const auto params = model.parameters();
    if (params.size() > kMaxSquareLocusParams) {
        throw TooLarge(std::to_string(params.size()) + " parameters exceed the symbolic limit of " +
                       std::to_string(kMaxSquareLocusParams));
    }
    const SymbolicMatrix j = jacobian(coefficient_map(model), params);
    require_identifiable(j, options);
    if (j.is_square()) return {sign_normalized(determinant(j)), true, 1};

    if (params.size() > kMaxMinorGcdParams) {
        throw TooLarge("non-square Jacobian with " + std::to_string(params.size()) +
                       " parameters exceeds the minor-gcd limit of " + std::to_string(kMaxMinorGcdParams));
    }
    std::vector<std::vector<std::size_t>> subsets;
    for_each_subset(j.rows(), j.cols(), [&](const std::vector<std::size_t>& rows) { subsets.push_back(rows); });
    std::vector<std::size_t> cols(j.cols());
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = c;

    std::vector<Polynomial> minors(subsets.size());
#pragma omp parallel for schedule(dynamic) if (options.parallel)
    for (std::size_t s = 0; s < subsets.size(); ++s) minors[s] = determinant(j.select(subsets[s], cols));

    Polynomial g;
    for (const auto& m : minors) {
        if (m.is_zero()) continue;
        if (!g.is_zero() && m.exact_divide(g)) continue;
        g = gcd(g, m);
    }
    return {sign_normalized(g), false, subsets.size()};
}

Polynomial singular_locus_polynomial(const CompartmentalModel& model, const RankOptions& options) {
    return singular_locus(model, options).polynomial;
}

HyperplaneEvidence contains_hyperplane(const CompartmentalModel& model, const Polynomial& h, int samples,
                                       const RankOptions& options) {
    make_hyperplane(h);
    if (samples < 1) throw PreconditionViolated("need at least one sample");
    const auto params = model.parameters();
    const std::uint64_t p = options.prime;

    std::map<Var, std::size_t> slots;
    for (std::size_t i = 0; i < params.size(); ++i) slots.emplace(params[i], i);
    HyperplaneEvidence ev;
    std::uint64_t lead = 0;
    mpz_class lead_z;
    for (const auto& t : h.terms()) {
        if (t.monomial.is_one()) continue;
        const Var v = t.monomial.var_at(0);
        if (!slots.contains(v)) throw PreconditionViolated(v.name() + " is not a parameter of the model");
        const std::uint64_t c = modp::reduce(t.coeff, p);
        if (lead == 0 && c != 0) {
            ev.solved_for = v;
            lead = c;
            lead_z = t.coeff;
        }
    }
    if (lead == 0) throw UnsolvableConstraint("no variable of " + h.to_string() + " has an invertible coefficient");

    const SymbolicMatrix j = jacobian(coefficient_map(model), params);
    require_identifiable(j, options);
    const CompiledMatrix cj(j, params, p);
    // h = lead * v + rest, so v = -rest / lead on the hyperplane.
    const Polynomial rest = h - Polynomial(ev.solved_for).scaled(lead_z);
    const CompiledPolynomial rest_c(rest, slots, p);
    const std::uint64_t neg_inv = modp::sub(0, modp::inverse(lead, p), p);
    const std::size_t slot = slots.at(ev.solved_for);

    auto points = random_points(params.size(), samples, p, options.seed);
    std::vector<char> deficient(points.size());
#pragma omp parallel for schedule(dynamic) if (options.parallel)
    for (std::size_t s = 0; s < points.size(); ++s) {
        auto& pt = points[s];
        pt[slot] = 0;
        pt[slot] = modp::mul(rest_c(pt), neg_inv, p);
        auto values = cj.evaluate(pt);
        deficient[s] = modp::rank(values, j.rows(), j.cols(), p) < j.cols();
    }
    ev.samples = samples;
    ev.contained = std::all_of(deficient.begin(), deficient.end(), [](char d) { return d != 0; });
    return ev;
}

std::vector<Hyperplane> predicted_hyperplanes(const CompartmentalModel& model) {
    if (shape_of(model).shape != Shape::DirectedCycle) throw PreconditionViolated("predicted hyperplanes need a cycle model");
    if (model.inputs() != std::set<int>{1}) throw PreconditionViolated("predicted hyperplanes need In = {1}");
    if (classify_cycle(model).verdict != Verdict::Identifiable) {
        throw PreconditionViolated("predicted hyperplanes need an identifiable model");
    }
    const int n = model.n();
    const auto& leaks = model.leaks();
    const auto& outs = model.outputs();
    std::vector<Hyperplane> out;
    if (std::any_of(leaks.begin(), leaks.end(), [](int l) { return l != 1; })) {
        out.push_back(make_hyperplane(edge_poly(1, 2), "(1)"));
    }
    if (!leaks.empty() && *leaks.rbegin() >= *outs.rbegin()) {
        const int top = *leaks.rbegin();
        for (int a = 1; a <= n; ++a) {
            if (a != top) out.push_back(make_hyperplane(edge_poly(a, mod_n(a + 1, n)), "(2)"));
        }
    }
    if (outs.size() == 1 && leaks.size() == 2) {
        const int p = *outs.begin();
        const int q = *leaks.begin();
        if (*leaks.rbegin() == p && q < p && p <= n - 1) {
            out.push_back(make_hyperplane(cycle_out(model, q) - cycle_out(model, p), "(3)"));
        }
    }
    return out;
}

Polynomial vandermonde_locus(int n, int leak) {
    if (n < 3 || leak < 1 || leak > n) throw PreconditionViolated("need n >= 3 and 1 <= leak <= n");
    const auto m = make_cycle(n, {1}, {1}, {leak});
    Polynomial result(1);
    for (int i = 1; i <= n; ++i) {
        if (i != leak) result *= edge_poly(i, mod_n(i + 1, n));
    }
    for (int i = 2; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) result *= cycle_out(m, i) - cycle_out(m, j);
    }
    return result;
}

std::vector<ConjectureRow> explore_conjecture(const CompartmentalModel& model, int samples,
                                              const RankOptions& options, ConjectureScope scope) {
    if (shape_of(model).shape != Shape::DirectedCycle) throw PreconditionViolated("conjecture concerns cycle models");
    if (model.inputs() != std::set<int>{1} || model.outputs().size() != 1) {
        throw PreconditionViolated("conjecture needs In = {1} and a single output");
    }
    if (classify_cycle(model).verdict != Verdict::Identifiable) {
        throw PreconditionViolated("conjecture needs an identifiable model");
    }
    const int p = *model.outputs().begin();
    const int n = model.n();
    std::vector<ConjectureRow> rows;
    const bool extended = scope == ConjectureScope::Extended;
    for (int a = 1; a <= (extended ? n : p - 1); ++a) {
        if (model.leaks().contains(a)) continue;
        for (int l : model.leaks()) {
            const bool in_range = a <= p - 1 && l <= p;
            if (!in_range && !extended) continue;
            ConjectureRow row;
            row.a = a;
            row.leak = l;
            row.in_range = in_range;
            row.hyperplane = make_hyperplane(cycle_out(model, l) - edge_poly(a, mod_n(a + 1, n)), "conjecture");
            row.evidence = contains_hyperplane(model, row.hyperplane.form, samples, options);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string conjecture_csv(const std::vector<ConjectureRow>& rows) {
    std::ostringstream os;
    os << "a,leak,hyperplane,in_range,supported,samples\n";
    for (const auto& r : rows) {
        os << r.a << ',' << r.leak << ",\"" << r.hyperplane.form.to_string() << " = 0\","
           << (r.in_range ? "true" : "false") << ',' << (r.evidence.contained ? "true" : "false") << ','
           << r.evidence.samples << '\n';
    }
    return os.str();
}

std::string Factored::to_string() const {
    std::vector<std::string> parts;
    for (const auto& [f, e] : factors) {
        std::string s = f.term_count() == 1 ? f.to_string() : "(" + f.to_string() + ")";
        if (e > 1) s += "^" + std::to_string(e);
        parts.push_back(std::move(s));
    }
    if (!rest.is_constant()) parts.push_back("(" + rest.to_string() + ")");
    std::string body;
    for (std::size_t i = 0; i < parts.size(); ++i) body += (i ? "*" : "") + parts[i];
    if (body.empty()) return unit.get_str();
    if (unit == 1) return body;
    if (unit == -1) return "-" + body;
    return unit.get_str() + "*" + body;
}

Factored factor_by_trial_division(const Polynomial& p, const std::vector<Polynomial>& candidates) {
    Factored out;
    if (p.is_zero()) {
        out.unit = 0;
        return out;
    }
    Polynomial rest = p;
    for (const auto& raw : candidates) {
        if (raw.is_constant()) continue;
        const Polynomial c = raw.primitive_part();
        int e = 0;
        while (auto q = rest.exact_divide(c)) {
            rest = std::move(*q);
            ++e;
        }
        if (e > 0) out.factors.emplace_back(c, e);
    }
    if (rest.is_constant()) {
        out.unit = rest.constant_value();
        out.rest = 1;
    } else {
        out.unit = rest.content() * (rest.leading_term().coeff < 0 ? -1 : 1);
        out.rest = rest.divide_integer(out.unit);
    }
    return out;
}

std::vector<Polynomial> candidate_linear_forms(const CompartmentalModel& model) {
    std::vector<Polynomial> out;
    for (Var v : model.parameters()) out.emplace_back(v);
    if (shape_of(model).shape == Shape::DirectedCycle) {
        const int n = model.n();
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) out.push_back(cycle_out(model, i) - cycle_out(model, j));
        }
    }
    return out;
}

}  // namespace compident

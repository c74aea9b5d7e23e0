#include "compident/ident.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "compident/error.hpp"

namespace compident {

std::string to_string(ParamStatus status) {
    return status == ParamStatus::LocallyIdentifiable ? "local" : "non";
}

SymbolicMatrix jacobian(const CoefficientMap& cm, const std::vector<ParameterId>& params) {
    const std::set<Var> covered(params.begin(), params.end());
    for (const auto& p : cm.coeffs) {
        for (Var v : p.variables()) {
            if (!covered.contains(v)) throw UncoveredVariable("coefficient depends on " + v.name() + " outside the parameter list");
        }
    }
    SymbolicMatrix j(cm.size(), params.size());
    for (std::size_t r = 0; r < cm.size(); ++r) {
        for (std::size_t c = 0; c < params.size(); ++c) j(r, c) = cm.coeffs[r].partial(params[c]);
    }
    return j;
}

std::vector<std::vector<std::uint64_t>> random_points(std::size_t dims, int trials, std::uint64_t prime,
                                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint64_t>> out(trials, std::vector<std::uint64_t>(dims));
    for (auto& pt : out) {
        for (auto& x : pt) x = rng() % (prime - 1) + 1;
    }
    return out;
}

std::vector<Var> matrix_variables(const SymbolicMatrix& m) {
    std::set<Var> vars;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            for (Var v : m(r, c).variables()) vars.insert(v);
        }
    }
    return {vars.begin(), vars.end()};
}

CompiledMatrix::CompiledMatrix(const SymbolicMatrix& m, const std::vector<Var>& vars, std::uint64_t prime)
    : rows_(m.rows()), cols_(m.cols()) {
    std::map<Var, std::size_t> slots;
    for (std::size_t i = 0; i < vars.size(); ++i) slots.emplace(vars[i], i);
    cells_.reserve(rows_ * cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) cells_.emplace_back(m(r, c), slots, prime);
    }
}

std::vector<std::uint64_t> CompiledMatrix::evaluate(std::span<const std::uint64_t> point) const {
    std::vector<std::uint64_t> out(cells_.size());
    for (std::size_t k = 0; k < cells_.size(); ++k) out[k] = cells_[k](point);
    return out;
}

namespace {

void check_options(const RankOptions& options) {
    if (options.trials < 1) throw PreconditionViolated("at least one rank trial is required");
    if (options.prime <= (1ULL << 30) || !modp::is_probable_prime(options.prime)) {
        throw PreconditionViolated("field prime must be a prime above 2^30");
    }
}

// Rank at one point and, per column, whether the unit vector lies in the row space.
struct TrialResult {
    std::size_t rank = 0;
    std::vector<char> unit_in_span;
};

TrialResult run_trial(const CompiledMatrix& cj, std::span<const std::uint64_t> point, std::uint64_t prime,
                      bool with_units) {
    std::vector<std::uint64_t> values = cj.evaluate(point);
    TrialResult result;
    if (!with_units) {
        result.rank = modp::rank(values, cj.rows(), cj.cols(), prime);
        return result;
    }
    const modp::RowSpace space(std::move(values), cj.rows(), cj.cols(), prime);
    result.rank = space.rank();
    result.unit_in_span.resize(cj.cols());
    std::vector<std::uint64_t> unit(cj.cols(), 0);
    for (std::size_t c = 0; c < cj.cols(); ++c) {
        unit[c] = 1;
        result.unit_in_span[c] = space.contains(unit);
        unit[c] = 0;
    }
    return result;
}

std::vector<TrialResult> run_trials(const SymbolicMatrix& J, const RankOptions& options, bool with_units,
                                    bool parallel) {
    check_options(options);
    const std::vector<Var> vars = matrix_variables(J);
    const CompiledMatrix cj(J, vars, options.prime);
    const auto points = random_points(vars.size(), options.trials, options.prime, options.seed);
    std::vector<TrialResult> results(options.trials);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < options.trials; ++t) results[t] = run_trial(cj, points[t], options.prime, with_units);
    } else {
        for (int t = 0; t < options.trials; ++t) results[t] = run_trial(cj, points[t], options.prime, with_units);
    }
    return results;
}

std::size_t max_rank(const std::vector<TrialResult>& results) {
    std::size_t best = 0;
    for (const auto& r : results) best = std::max(best, r.rank);
    return best;
}

std::map<ParameterId, ParamStatus> flags_from(const std::vector<TrialResult>& results,
                                              const std::vector<ParameterId>& params) {
    const std::size_t rank = max_rank(results);
    std::map<ParameterId, ParamStatus> out;
    for (std::size_t c = 0; c < params.size(); ++c) {
        // Rank of J with e_c appended, maximized over the same points.
        std::size_t augmented = 0;
        for (const auto& r : results) augmented = std::max(augmented, r.rank + (r.unit_in_span[c] ? 0 : 1));
        out.emplace(params[c], augmented == rank ? ParamStatus::LocallyIdentifiable : ParamStatus::NonIdentifiable);
    }
    return out;
}

}  // namespace

std::size_t generic_rank(const SymbolicMatrix& J, const RankOptions& options) {
    return max_rank(run_trials(J, options, false, options.parallel));
}

std::size_t generic_rank_serial(const SymbolicMatrix& J, const RankOptions& options) {
    return max_rank(run_trials(J, options, false, false));
}

std::map<ParameterId, ParamStatus> per_param_flags(const SymbolicMatrix& J, const std::vector<ParameterId>& params,
                                                   const RankOptions& options) {
    if (J.cols() != params.size()) throw PreconditionViolated("one parameter per Jacobian column is required");
    return flags_from(run_trials(J, options, true, options.parallel), params);
}

JacobianAnalysis analyze_map(const CoefficientMap& cm, const std::vector<ParameterId>& params,
                             const RankOptions& options) {
    const SymbolicMatrix J = jacobian(cm, params);
    const auto results = run_trials(J, options, true, options.parallel);
    JacobianAnalysis a;
    a.param_order = params;
    for (const auto& l : cm.labels) a.coeff_labels.push_back(l.to_string());
    a.generic_rank = max_rank(results);
    a.full_rank_target = params.size();
    a.identifiable = a.generic_rank == a.full_rank_target;
    a.per_param = flags_from(results, params);
    a.trials = options.trials;
    a.field_prime = options.prime;
    a.seed = options.seed;
    return a;
}

JacobianAnalysis is_identifiable(const CompartmentalModel& model, const RankOptions& options) {
    if (!is_strongly_connected(model)) {
        throw NotStronglyConnected("the rank criterion needs a strongly connected model");
    }
    return analyze_map(coefficient_map(model), model.parameters(), options);
}

RationalMap as_rational(const CoefficientMap& cm) {
    RationalMap out;
    out.labels = cm.labels;
    for (const auto& p : cm.coeffs) out.entries.push_back({p, Polynomial(1)});
    return out;
}

RationalMap quotient_transform(const RationalMap& map, std::size_t i, std::size_t j) {
    if (i == j) throw PreconditionViolated("quotient of a coefficient by itself");
    if (i >= map.entries.size() || j >= map.entries.size()) throw PreconditionViolated("coefficient index out of range");
    if (map.entries[j].num.is_zero()) throw ZeroDivisorCoefficient("divisor coefficient is the zero polynomial");
    RationalMap out = map;
    out.entries[i].num = map.entries[i].num * map.entries[j].den;
    out.entries[i].den = map.entries[i].den * map.entries[j].num;
    out.labels[i].tag = map.labels[i].tag.empty() ? "quotient" : map.labels[i].tag + "/quotient";
    return out;
}

RationalMap quotient_transform(const CoefficientMap& cm, std::size_t i, std::size_t j) {
    return quotient_transform(as_rational(cm), i, j);
}

std::size_t rational_generic_rank(const RationalMap& map, const std::vector<ParameterId>& params,
                                  const RankOptions& options) {
    check_options(options);
    const std::size_t rows = map.entries.size();
    const std::size_t cols = params.size();
    const std::uint64_t p = options.prime;
    // Values and first partials of numerators and denominators.
    SymbolicMatrix parts(rows * 2, cols + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        parts(2 * r, 0) = map.entries[r].num;
        parts(2 * r + 1, 0) = map.entries[r].den;
        for (std::size_t c = 0; c < cols; ++c) {
            parts(2 * r, c + 1) = map.entries[r].num.partial(params[c]);
            parts(2 * r + 1, c + 1) = map.entries[r].den.partial(params[c]);
        }
    }
    for (Var v : matrix_variables(parts)) {
        if (std::find(params.begin(), params.end(), v) == params.end()) {
            throw UncoveredVariable("rational map depends on " + v.name() + " outside the parameter list");
        }
    }
    const CompiledMatrix compiled(parts, params, p);
    const auto points = random_points(params.size(), options.trials, p, options.seed);
    std::size_t best = 0;
    for (const auto& pt : points) {
        const auto v = compiled.evaluate(pt);
        std::vector<std::uint64_t> jac(rows * cols);
        bool defined = true;
        for (std::size_t r = 0; r < rows && defined; ++r) {
            const std::uint64_t* nrow = &v[(2 * r) * (cols + 1)];
            const std::uint64_t* drow = &v[(2 * r + 1) * (cols + 1)];
            if (drow[0] == 0) {
                defined = false;
                break;
            }
            const std::uint64_t inv_d2 = modp::inverse(modp::mul(drow[0], drow[0], p), p);
            for (std::size_t c = 0; c < cols; ++c) {
                const std::uint64_t top = modp::sub(modp::mul(nrow[c + 1], drow[0], p), modp::mul(nrow[0], drow[c + 1], p), p);
                jac[r * cols + c] = modp::mul(top, inv_d2, p);
            }
        }
        if (defined) best = std::max(best, modp::rank(jac, rows, cols, p));
    }
    return best;
}

}  // namespace compident

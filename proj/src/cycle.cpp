#include "compident/cycle.hpp"

#include <algorithm>
#include <functional>

#include "compident/error.hpp"

namespace compident {

int mod_n(int q, int n) { return ((q - 1) % n + n) % n + 1; }

void require_cycle(const CompartmentalModel& model) {
    if (shape_of(model).shape != Shape::DirectedCycle) throw NotACycle("model is not the directed cycle 1 -> ... -> n -> 1");
}

std::string to_string(Verdict v) { return v == Verdict::Identifiable ? "Identifiable" : "Unidentifiable"; }

ExceptionalCheck is_exceptional(const CompartmentalModel& model) {
    require_cycle(model);
    const int n = model.n();
    ExceptionalCheck out;
    if (model.inputs().size() != 1 || model.outputs().size() != 1 || model.leaks().size() != 2) return out;
    const int i = *model.inputs().begin();
    const int prev = mod_n(i - 1, n);
    if (*model.outputs().begin() == prev && model.leaks().contains(prev)) {
        out.exceptional = true;
        out.witness = std::make_pair(i, prev);
    }
    return out;
}

std::vector<LeakArc> leak_arcs(const CompartmentalModel& model) {
    const int n = model.n();
    const std::vector<int> leaks(model.leaks().begin(), model.leaks().end());
    std::vector<LeakArc> arcs;
    for (std::size_t a = 0; a < leaks.size(); ++a) {
        const int from = leaks[a];
        const int to = leaks[(a + 1) % leaks.size()];
        LeakArc arc{from, to, {}};
        int q = from;
        do {
            q = mod_n(q + 1, n);
            arc.members.push_back(q);
        } while (q != to);
        arcs.push_back(std::move(arc));
    }
    return arcs;
}

InterlacingCheck is_leak_interlacing(const CompartmentalModel& model) {
    InterlacingCheck out;
    const auto exc = is_exceptional(model);
    if (exc.exceptional) {
        out.exceptional = true;
        out.witness = exc.witness;
        return out;
    }
    if (model.leaks().size() <= 1) {
        out.interlacing = true;
        return out;
    }
    for (const auto& arc : leak_arcs(model)) {
        const bool marked = std::any_of(arc.members.begin(), arc.members.end(), [&](int q) {
            return model.inputs().contains(q) || model.outputs().contains(q);
        });
        if (!marked) {
            out.witness = std::make_pair(arc.from_leak, arc.to_leak);
            return out;
        }
    }
    out.interlacing = true;
    return out;
}

CycleClassification classify_cycle(const CompartmentalModel& model) {
    const auto check = is_leak_interlacing(model);
    CycleClassification c;
    c.is_exceptional = check.exceptional;
    c.is_leak_interlacing = check.interlacing;
    c.verdict = check.interlacing ? Verdict::Identifiable : Verdict::Unidentifiable;
    c.witness = check.witness;
    return c;
}

namespace {

// k_{q+1,q}, plus k_{0q} when q leaks.
Polynomial step(const CompartmentalModel& model, int q) {
    Polynomial p(Var::edge(q, mod_n(q + 1, model.n())));
    if (model.leaks().contains(q)) p += Polynomial(Var::leak(q));
    return p;
}

}  // namespace

CoefficientMap cycle_coefficient_map(const CompartmentalModel& model, bool allow_leak_free) {
    require_cycle(model);
    if (model.inputs() != std::set<int>{1} || model.outputs().size() != 1) {
        throw PreconditionViolated("closed form needs In = {1} and a single output");
    }
    if (model.leaks().empty() && !allow_leak_free) throw PreconditionViolated("closed form needs at least one leak");
    const int n = model.n();
    const int p = *model.outputs().begin();

    std::vector<Polynomial> e_set;
    Polynomial cycle_product(1);
    for (int q = 1; q <= n; ++q) {
        e_set.push_back(step(model, q));
        cycle_product *= Polynomial(Var::edge(q, mod_n(q + 1, n)));
    }
    const auto e = elem_sym_all(e_set);

    CoefficientMap cm;
    using Side = CoefficientLabel::Side;
    for (int i = 1; i <= n - 1; ++i) cm.push({p, Side::Lhs, 0, n - i, "I"}, e[i]);
    Polynomial type2 = e[n] - cycle_product;
    if (!type2.is_zero()) cm.push({p, Side::Lhs, 0, 0, "II"}, std::move(type2));

    const Polynomial kappa = kappa_path(model, 1, p);
    if (p != 1) cm.push({p, Side::Rhs, 1, n - p, "III"}, kappa);
    std::vector<Polynomial> e_star_set;
    for (int q = p + 1; q <= n; ++q) e_star_set.push_back(step(model, q));
    const auto es = elem_sym_all(e_star_set);
    for (int j = 1; j <= n - p; ++j) cm.push({p, Side::Rhs, 1, n - p - j, "IV"}, es[j] * kappa);
    return cm;
}

std::vector<int> rotation(int n, int shift) {
    std::vector<int> perm(n + 1, 0);
    for (int q = 1; q <= n; ++q) perm[q] = mod_n(q - shift, n);
    return perm;
}

CompartmentalModel rotate(const CompartmentalModel& model, int shift) {
    return model.relabeled(rotation(model.n(), shift));
}

CoefficientMap cycle_coefficient_map_any_input(const CompartmentalModel& model, bool allow_leak_free) {
    require_cycle(model);
    if (model.inputs().size() != 1) throw PreconditionViolated("closed form needs a single input");
    const int n = model.n();
    const int shift = *model.inputs().begin() - 1;
    const CompartmentalModel rotated = rotate(model, shift);
    CoefficientMap cm = cycle_coefficient_map(rotated, allow_leak_free);
    const auto back = parameter_renaming(rotated, rotation(n, -shift));
    for (auto& c : cm.coeffs) c = c.rename(back);
    for (auto& l : cm.labels) {
        l.output = mod_n(l.output + shift, n);
        if (l.input != 0) l.input = mod_n(l.input + shift, n);
    }
    return cm;
}

Polynomial kappa_path(const CompartmentalModel& model, int i, int j) {
    require_cycle(model);
    const int n = model.n();
    Polynomial prod(1);
    for (int q = i; q != j; q = mod_n(q + 1, n)) prod *= Polynomial(Var::edge(q, mod_n(q + 1, n)));
    return prod;
}

Polynomial e_star_one(const CompartmentalModel& model, int i, int j) {
    require_cycle(model);
    const int n = model.n();
    if (j == mod_n(i - 1, n)) {
        throw UndefinedForAdjacentPair("e*_1(" + std::to_string(i) + ", " + std::to_string(j) + ") has an empty range");
    }
    Polynomial sum;
    for (int q = mod_n(j + 1, n); q != i; q = mod_n(q + 1, n)) sum += step(model, q);
    return sum;
}

bool is_minimally_leak_interlacing(const CompartmentalModel& model) {
    if (model.leaks().size() < 2 || !is_leak_interlacing(model).interlacing) return false;
    for (const auto& arc : leak_arcs(model)) {
        int ins = 0, outs = 0;
        for (int q : arc.members) {
            ins += model.inputs().contains(q);
            outs += model.outputs().contains(q);
        }
        if (!((ins == 1 && outs == 0) || (ins == 0 && outs == 1))) return false;
    }
    return true;
}

bool in_exceptional_family(const CompartmentalModel& model) {
    require_cycle(model);
    if (model.leaks().size() != 2) return false;
    const int n = model.n();
    for (int i : model.inputs()) {
        const int prev = mod_n(i - 1, n);
        if (model.outputs().contains(prev) && model.leaks().contains(prev)) return true;
    }
    return false;
}

namespace {

int lowest(const std::vector<int>& members, const std::set<int>& pool) {
    int best = 0;
    for (int q : members) {
        if (pool.contains(q) && (best == 0 || q < best)) best = q;
    }
    return best;
}

bool has(const std::vector<int>& members, const std::set<int>& pool) { return lowest(members, pool) != 0; }

std::optional<CompartmentalModel> accept(const CompartmentalModel& model, std::set<int> in, std::set<int> out) {
    if (in.empty() || out.empty()) return std::nullopt;
    CompartmentalModel candidate = model.with_inputs(std::move(in)).with_outputs(std::move(out));
    if (!is_minimally_leak_interlacing(candidate)) return std::nullopt;
    return candidate;
}

}  // namespace

CompartmentalModel find_minimal_interlacing_submodel(const CompartmentalModel& model) {
    require_cycle(model);
    if (model.leaks().size() < 2) throw NotApplicable("needs at least two leaks");
    if (!is_leak_interlacing(model).interlacing) throw NotApplicable("model is not leak-interlacing");
    const auto arcs = leak_arcs(model);
    const auto& ins = model.inputs();
    const auto& outs = model.outputs();

    std::set<int> in_sel, out_sel;
    const auto no_input = std::find_if(arcs.begin(), arcs.end(), [&](const LeakArc& a) { return !has(a.members, ins); });
    if (no_input == arcs.end()) {
        // Every arc holds an input: one arc contributes an output, the rest inputs.
        const auto with_output =
            std::find_if(arcs.begin(), arcs.end(), [&](const LeakArc& a) { return has(a.members, outs); });
        for (auto it = arcs.begin(); it != arcs.end(); ++it) {
            if (it == with_output) {
                out_sel.insert(lowest(it->members, outs));
            } else {
                in_sel.insert(lowest(it->members, ins));
            }
        }
    } else {
        out_sel.insert(lowest(no_input->members, outs));
        const auto with_input = std::find_if(arcs.begin(), arcs.end(), [&](const LeakArc& a) { return has(a.members, ins); });
        in_sel.insert(lowest(with_input->members, ins));
        for (auto it = arcs.begin(); it != arcs.end(); ++it) {
            if (it == no_input || it == with_input) continue;
            const int i = lowest(it->members, ins);
            const int o = lowest(it->members, outs);
            if (i != 0 && (o == 0 || i <= o)) {
                in_sel.insert(i);
            } else {
                out_sel.insert(o);
            }
        }
    }
    if (auto m = accept(model, in_sel, out_sel)) return *m;

    // Only reachable from the exceptional family: fall back to the first
    // one-marker-per-arc selection, in arc order and ascending compartments,
    // that is not exceptional.
    std::vector<std::vector<std::pair<int, bool>>> choices;  // (compartment, is_input)
    for (const auto& arc : arcs) {
        std::vector<std::pair<int, bool>> opts;
        std::vector<int> sorted = arc.members;
        std::sort(sorted.begin(), sorted.end());
        for (int q : sorted) {
            if (ins.contains(q)) opts.emplace_back(q, true);
            if (outs.contains(q)) opts.emplace_back(q, false);
        }
        choices.push_back(std::move(opts));
    }
    std::optional<CompartmentalModel> found;
    std::set<int> cur_in, cur_out;
    std::function<void(std::size_t)> search = [&](std::size_t a) {
        if (found) return;
        if (a == choices.size()) {
            found = accept(model, cur_in, cur_out);
            return;
        }
        for (const auto& [q, is_in] : choices[a]) {
            auto& target = is_in ? cur_in : cur_out;
            target.insert(q);
            search(a + 1);
            target.erase(q);
            if (found) return;
        }
    };
    search(0);
    if (!found) throw NotApplicable("no minimally leak-interlacing submodel exists");
    return *found;
}

}  // namespace compident

#include "compident/forests.hpp"

#include <algorithm>

#include "compident/error.hpp"

namespace compident {

LeakExtendedGraph::LeakExtendedGraph(const CompartmentalModel& model, std::optional<int> star)
    : n_(model.n()), star_(star) {
    for (const Edge& e : model.edges()) {
        if (star && e.from == *star) continue;
        edges_.push_back({e.from, e.to, Var::edge(e.from, e.to)});
    }
    for (int l : model.leaks()) {
        if (star && l == *star) continue;
        edges_.push_back({l, 0, Var::leak(l)});
    }
    std::sort(edges_.begin(), edges_.end(), [](const LabeledEdge& a, const LabeledEdge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
}

namespace {

// Union-find with rollback: union by size, no path compression.
class RollbackDsu {
public:
    explicit RollbackDsu(int size) : parent_(size), size_(size, 1) {
        for (int i = 0; i < size; ++i) parent_[i] = i;
    }
    int find(int v) const {
        while (parent_[v] != v) v = parent_[v];
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        history_.push_back(b);
        return true;
    }
    void undo() {
        const int b = history_.back();
        history_.pop_back();
        size_[parent_[b]] -= size_[b];
        parent_[b] = b;
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<int> history_;
};

struct Search {
    const LeakExtendedGraph& g;
    int m;
    std::optional<std::pair<int, int>> pair;
    const std::function<void(const Forest&)>& visit;
    std::vector<std::vector<std::size_t>> out_edges;  // per source vertex
    RollbackDsu dsu;
    Forest chosen;

    void run(int v) {
        const int remaining = g.n() - v + 1;
        const int need = m - static_cast<int>(chosen.size());
        if (need > remaining) return;
        if (v > g.n()) {
            if (pair && dsu.find(pair->first) != dsu.find(pair->second)) return;
            visit(chosen);
            return;
        }
        if (need < remaining) run(v + 1);
        if (need == 0) return;
        for (std::size_t idx : out_edges[v]) {
            const LabeledEdge& e = g.edges()[idx];
            if (!dsu.unite(e.from, e.to)) continue;
            chosen.push_back(idx);
            run(v + 1);
            chosen.pop_back();
            dsu.undo();
        }
    }
};

}  // namespace

void enumerate_incoming_forests(const LeakExtendedGraph& g, int m, std::optional<std::pair<int, int>> pair,
                                const std::function<void(const Forest&)>& visit) {
    if (m < 0 || m > g.n()) return;
    Search s{g, m, pair, visit, std::vector<std::vector<std::size_t>>(g.n() + 1), RollbackDsu(g.n() + 1), {}};
    for (std::size_t i = 0; i < g.edges().size(); ++i) s.out_edges[g.edges()[i].from].push_back(i);
    s.run(1);
}

std::vector<Forest> incoming_forests(const LeakExtendedGraph& g, int m, std::optional<std::pair<int, int>> pair) {
    std::vector<Forest> out;
    enumerate_incoming_forests(g, m, pair, [&](const Forest& f) { out.push_back(f); });
    return out;
}

Polynomial forest_weight(const LeakExtendedGraph& g, const Forest& f) {
    Monomial mono;
    for (std::size_t idx : f) mono = mono * Monomial(g.edges()[idx].label);
    return Polynomial(mono, mpz_class(1));
}

Polynomial forest_polynomial(const LeakExtendedGraph& g, int m, std::optional<std::pair<int, int>> pair) {
    std::vector<Term> terms;
    enumerate_incoming_forests(g, m, pair, [&](const Forest& f) {
        Monomial mono;
        for (std::size_t idx : f) mono = mono * Monomial(g.edges()[idx].label);
        terms.push_back({std::move(mono), mpz_class(1)});
    });
    return Polynomial::from_terms(std::move(terms));
}

ForestCoefficients coeff_via_forests(const CompartmentalModel& model, int i, int j) {
    if (!model.outputs().contains(i)) throw NotAnOutput("compartment " + std::to_string(i) + " is not an output");
    if (!model.inputs().contains(j)) throw NotAnInput("compartment " + std::to_string(j) + " is not an input");
    const int n = model.n();
    const LeakExtendedGraph full(model);
    const LeakExtendedGraph star(model, i);
    ForestCoefficients out;
    // lhs[t] multiplies y^(n-t), i.e. c_{n-t}, a sum over t-edge forests.
    for (int t = 0; t <= n; ++t) out.lhs.push_back(forest_polynomial(full, t));
    // rhs[t] multiplies u^(n-1-t), a sum over t-edge forests of the star graph joining j and i.
    for (int t = 0; t < n; ++t) out.rhs.push_back(forest_polynomial(star, t, std::make_pair(j, i)));
    return out;
}

}  // namespace compident

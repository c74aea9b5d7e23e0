#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "compident/model.hpp"
#include "compident/polynomial.hpp"

namespace compident {

struct LabeledEdge {
    int from;
    int to;  // 0 is the environment
    Var label;
    friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

// G with an extra vertex 0 and an edge l -> 0 per leak. The star variant drops
// every outgoing edge of one vertex.
class LeakExtendedGraph {
public:
    explicit LeakExtendedGraph(const CompartmentalModel& model, std::optional<int> star = std::nullopt);

    int n() const { return n_; }
    std::optional<int> star() const { return star_; }
    // Sorted by source, then target; vertex 0 has none.
    const std::vector<LabeledEdge>& edges() const { return edges_; }

private:
    int n_;
    std::optional<int> star_;
    std::vector<LabeledEdge> edges_;
};

// A forest as the increasing list of indices into graph.edges().
using Forest = std::vector<std::size_t>;

// Calls `visit` for every m-edge spanning incoming forest, in lexicographic
// order of per-vertex edge choices. With `pair = (j, i)` only forests where j
// and i share an undirected component are reported.
void enumerate_incoming_forests(const LeakExtendedGraph& g, int m, std::optional<std::pair<int, int>> pair,
                                const std::function<void(const Forest&)>& visit);
std::vector<Forest> incoming_forests(const LeakExtendedGraph& g, int m,
                                     std::optional<std::pair<int, int>> pair = std::nullopt);

// Product of the edge labels.
Polynomial forest_weight(const LeakExtendedGraph& g, const Forest& f);
// Sum of forest weights over all m-edge forests.
Polynomial forest_polynomial(const LeakExtendedGraph& g, int m, std::optional<std::pair<int, int>> pair = std::nullopt);

struct ForestCoefficients {
    std::vector<Polynomial> lhs;  // same layout as IoEquation::lhs
    std::vector<Polynomial> rhs;  // same layout as IoEquation::rhs[j]
};

// Input-output coefficients for output i and input j from forest sums.
ForestCoefficients coeff_via_forests(const CompartmentalModel& model, int i, int j);

}  // namespace compident

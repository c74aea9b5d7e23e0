#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "compident/matrix.hpp"
#include "compident/variable.hpp"

namespace compident {

// Edge parameter k_{ij} (flow j -> i) or leak parameter k_{0l}. The Var key
// order is the canonical column order of every Jacobian.
using ParameterId = Var;

// Directed edge from -> to between 1-indexed compartments.
struct Edge {
    int from;
    int to;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Linear compartmental model (G, In, Out, Leak). Immutable once built; the
// constructor validates every structural invariant and throws InvalidModel.
class CompartmentalModel {
public:
    CompartmentalModel(int n, std::vector<Edge> edges, std::set<int> inputs, std::set<int> outputs,
                       std::set<int> leaks);

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }  // sorted, unique
    const std::set<int>& inputs() const { return inputs_; }
    const std::set<int>& outputs() const { return outputs_; }
    const std::set<int>& leaks() const { return leaks_; }

    bool has_edge(int from, int to) const;
    // Edges in canonical order, then leaks ascending.
    std::vector<ParameterId> parameters() const;
    std::size_t parameter_count() const { return edges_.size() + leaks_.size(); }

    CompartmentalModel with_inputs(std::set<int> inputs) const;
    CompartmentalModel with_outputs(std::set<int> outputs) const;
    CompartmentalModel with_leaks(std::set<int> leaks) const;

    // Renames compartment q to perm[q] (perm is 1-indexed, perm[0] unused).
    CompartmentalModel relabeled(const std::vector<int>& perm) const;

    friend bool operator==(const CompartmentalModel&, const CompartmentalModel&) = default;

private:
    int n_;
    std::vector<Edge> edges_;
    std::set<int> inputs_;
    std::set<int> outputs_;
    std::set<int> leaks_;
};

// Parameter renaming induced by a compartment relabeling.
std::map<Var, Var> parameter_renaming(const CompartmentalModel& model, const std::vector<int>& perm);

// Accepts {"n", "edges", "in", "out", "leak"} and nothing else. Throws
// MalformedSpec for syntax/schema errors, InvalidModel for semantic ones.
CompartmentalModel parse_model(const std::string& text);
CompartmentalModel model_from_json(const nlohmann::json& doc);
// Canonical form: keys in schema order, edges sorted, sets ascending.
nlohmann::ordered_json model_to_json(const CompartmentalModel& model);
std::string serialize_model(const CompartmentalModel& model);

enum class Shape { DirectedCycle, Catenary, BidirectedTree, Other };
std::string to_string(Shape shape);

struct ShapeInfo {
    Shape shape;
    bool strongly_connected;
};

// Literal-label detection: the directed cycle must be 1 -> 2 -> ... -> n -> 1
// and the catenary the path 1 <-> 2 <-> ... <-> n.
ShapeInfo shape_of(const CompartmentalModel& model);
bool is_strongly_connected(const CompartmentalModel& model);

// Symbolic compartmental matrix A (entry (i-1, j-1) is a_ij).
SymbolicMatrix compartmental_matrix(const CompartmentalModel& model);

// Convenience constructors for the model families used throughout.
CompartmentalModel make_cycle(int n, std::set<int> inputs, std::set<int> outputs, std::set<int> leaks);
CompartmentalModel make_catenary(int n, std::set<int> inputs, std::set<int> outputs, std::set<int> leaks);

}  // namespace compident

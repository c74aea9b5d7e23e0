#include "compident/model.hpp"

#include <algorithm>
#include <functional>

#include "compident/error.hpp"

namespace compident {

namespace {

void check_index(int n, int v, const char* what) {
    if (v < 1 || v > n) {
        throw InvalidModel(std::string(what) + " index " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
    }
}

void check_set(int n, const std::set<int>& s, const char* what) {
    for (int v : s) check_index(n, v, what);
}

}  // namespace

CompartmentalModel::CompartmentalModel(int n, std::vector<Edge> edges, std::set<int> inputs, std::set<int> outputs,
                                       std::set<int> leaks)
    : n_(n), edges_(std::move(edges)), inputs_(std::move(inputs)), outputs_(std::move(outputs)), leaks_(std::move(leaks)) {
    if (n_ < 1) throw InvalidModel("n must be positive");
    if (n_ > Var::kMaxCompartment) throw InvalidModel("n too large");
    if (inputs_.empty()) throw InvalidModel("model needs at least one input");
    if (outputs_.empty()) throw InvalidModel("model needs at least one output");
    check_set(n_, inputs_, "input");
    check_set(n_, outputs_, "output");
    check_set(n_, leaks_, "leak");
    for (const Edge& e : edges_) {
        check_index(n_, e.from, "edge");
        check_index(n_, e.to, "edge");
        if (e.from == e.to) throw InvalidModel("self-loop at compartment " + std::to_string(e.from));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool CompartmentalModel::has_edge(int from, int to) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

std::vector<ParameterId> CompartmentalModel::parameters() const {
    std::vector<ParameterId> out;
    out.reserve(parameter_count());
    for (const Edge& e : edges_) out.push_back(Var::edge(e.from, e.to));
    for (int l : leaks_) out.push_back(Var::leak(l));
    return out;
}

CompartmentalModel CompartmentalModel::with_inputs(std::set<int> inputs) const {
    return {n_, edges_, std::move(inputs), outputs_, leaks_};
}
CompartmentalModel CompartmentalModel::with_outputs(std::set<int> outputs) const {
    return {n_, edges_, inputs_, std::move(outputs), leaks_};
}
CompartmentalModel CompartmentalModel::with_leaks(std::set<int> leaks) const {
    return {n_, edges_, inputs_, outputs_, std::move(leaks)};
}

CompartmentalModel CompartmentalModel::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_ + 1) throw InvalidModel("relabeling must cover every compartment");
    auto map_set = [&](const std::set<int>& s) {
        std::set<int> out;
        for (int v : s) out.insert(perm[v]);
        return out;
    };
    std::vector<Edge> edges;
    for (const Edge& e : edges_) edges.push_back({perm[e.from], perm[e.to]});
    return {n_, std::move(edges), map_set(inputs_), map_set(outputs_), map_set(leaks_)};
}

std::map<Var, Var> parameter_renaming(const CompartmentalModel& model, const std::vector<int>& perm) {
    std::map<Var, Var> out;
    for (const Edge& e : model.edges()) out.emplace(Var::edge(e.from, e.to), Var::edge(perm[e.from], perm[e.to]));
    for (int l : model.leaks()) out.emplace(Var::leak(l), Var::leak(perm[l]));
    return out;
}

CompartmentalModel model_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw MalformedSpec("model spec must be a JSON object");
    static const std::set<std::string> known{"n", "edges", "in", "out", "leak"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.contains(key)) throw MalformedSpec("unknown key \"" + key + "\"");
    }
    for (const auto& key : known) {
        if (!doc.contains(key)) throw MalformedSpec("missing key \"" + key + "\"");
    }
    if (!doc["n"].is_number_integer()) throw MalformedSpec("\"n\" must be an integer");
    const auto as_int = [](const nlohmann::json& v, const std::string& where) {
        if (!v.is_number_integer()) throw MalformedSpec(where + " entries must be integers");
        const auto x = v.get<long long>();
        if (x < -1000000 || x > 1000000) throw InvalidModel(where + " entry out of range");
        return static_cast<int>(x);
    };
    const auto as_set = [&](const std::string& key) {
        const auto& arr = doc[key];
        if (!arr.is_array()) throw MalformedSpec("\"" + key + "\" must be an array");
        std::set<int> out;
        for (const auto& v : arr) out.insert(as_int(v, "\"" + key + "\""));
        return out;
    };
    const auto& arr = doc["edges"];
    if (!arr.is_array()) throw MalformedSpec("\"edges\" must be an array");
    std::vector<Edge> edges;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2) throw MalformedSpec("each edge must be a [from, to] pair");
        edges.push_back({as_int(e[0], "edge"), as_int(e[1], "edge")});
    }
    const auto n = doc["n"].get<long long>();
    if (n < 1 || n > Var::kMaxCompartment) throw InvalidModel("n must be in [1, " + std::to_string(Var::kMaxCompartment) + "]");
    return {static_cast<int>(n), std::move(edges), as_set("in"), as_set("out"), as_set("leak")};
}

CompartmentalModel parse_model(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedSpec(std::string("invalid JSON: ") + e.what());
    }
    return model_from_json(doc);
}

nlohmann::ordered_json model_to_json(const CompartmentalModel& model) {
    nlohmann::ordered_json doc;
    doc["n"] = model.n();
    auto edges = nlohmann::ordered_json::array();
    for (const Edge& e : model.edges()) edges.push_back({e.from, e.to});
    doc["edges"] = edges;
    doc["in"] = model.inputs();
    doc["out"] = model.outputs();
    doc["leak"] = model.leaks();
    return doc;
}

std::string serialize_model(const CompartmentalModel& model) { return model_to_json(model).dump(); }

std::string to_string(Shape shape) {
    switch (shape) {
        case Shape::DirectedCycle: return "cycle";
        case Shape::Catenary: return "catenary";
        case Shape::BidirectedTree: return "tree";
        case Shape::Other: return "other";
    }
    return "other";
}

bool is_strongly_connected(const CompartmentalModel& model) {
    const int n = model.n();
    std::vector<std::vector<int>> fwd(n + 1), bwd(n + 1);
    for (const Edge& e : model.edges()) {
        fwd[e.from].push_back(e.to);
        bwd[e.to].push_back(e.from);
    }
    const auto reaches_all = [n](const std::vector<std::vector<int>>& adj) {
        std::vector<char> seen(n + 1, 0);
        std::vector<int> stack{1};
        seen[1] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == n;
    };
    return reaches_all(fwd) && reaches_all(bwd);
}

ShapeInfo shape_of(const CompartmentalModel& model) {
    const int n = model.n();
    const auto& edges = model.edges();
    const bool sc = is_strongly_connected(model);

    if (n >= 3 && static_cast<int>(edges.size()) == n) {
        bool cycle = true;
        for (int i = 1; i <= n && cycle; ++i) cycle = model.has_edge(i, i % n + 1);
        if (cycle) return {Shape::DirectedCycle, sc};
    }

    if (static_cast<int>(edges.size()) == 2 * (n - 1)) {
        bool path = true;
        for (int i = 1; i < n && path; ++i) path = model.has_edge(i, i + 1) && model.has_edge(i + 1, i);
        if (path) return {Shape::Catenary, sc};

        // Every edge bidirected and the n-1 undirected edges connect [n].
        bool bidirected = true;
        std::vector<int> parent(n + 1);
        for (int i = 0; i <= n; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
        int merged = 0;
        for (const Edge& e : edges) {
            if (!model.has_edge(e.to, e.from)) {
                bidirected = false;
                break;
            }
            if (e.from < e.to) {
                int a = find(e.from), b = find(e.to);
                if (a != b) {
                    parent[a] = b;
                    ++merged;
                }
            }
        }
        if (bidirected && merged == n - 1) return {Shape::BidirectedTree, sc};
    }
    return {Shape::Other, sc};
}

SymbolicMatrix compartmental_matrix(const CompartmentalModel& model) {
    const int n = model.n();
    SymbolicMatrix a(n, n);
    for (const Edge& e : model.edges()) {
        const Polynomial k(Var::edge(e.from, e.to));
        a(e.to - 1, e.from - 1) += k;
        a(e.from - 1, e.from - 1) -= k;
    }
    for (int l : model.leaks()) a(l - 1, l - 1) -= Polynomial(Var::leak(l));
    return a;
}

CompartmentalModel make_cycle(int n, std::set<int> inputs, std::set<int> outputs, std::set<int> leaks) {
    std::vector<Edge> edges;
    for (int i = 1; i <= n; ++i) edges.push_back({i, i % n + 1});
    return {n, std::move(edges), std::move(inputs), std::move(outputs), std::move(leaks)};
}

CompartmentalModel make_catenary(int n, std::set<int> inputs, std::set<int> outputs, std::set<int> leaks) {
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) {
        edges.push_back({i, i + 1});
        edges.push_back({i + 1, i});
    }
    return {n, std::move(edges), std::move(inputs), std::move(outputs), std::move(leaks)};
}

}  // namespace compident

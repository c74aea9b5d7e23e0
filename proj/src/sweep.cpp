#include "compident/sweep.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "compident/cycle.hpp"
#include "compident/error.hpp"

namespace compident {

std::string to_string(Family family) {
    switch (family) {
    case Family::Cycle: return "cycle";
    case Family::Catenary: return "catenary";
    case Family::Tree: return "tree";
    }
    return "?";
}

Family parse_family(const std::string& text) {
    if (text == "cycle") return Family::Cycle;
    if (text == "catenary") return Family::Catenary;
    if (text == "tree") return Family::Tree;
    throw PreconditionViolated("unknown family '" + text + "'");
}

namespace {

using Key = std::vector<int>;

std::set<int> from_mask(int mask) {
    std::set<int> s;
    for (int i = 0; mask >> i; ++i) {
        if (mask >> i & 1) s.insert(i + 1);
    }
    return s;
}

int to_mask(const std::set<int>& s) {
    int m = 0;
    for (int i : s) m |= 1 << (i - 1);
    return m;
}

// Edge list, then the three marker masks; compared lexicographically.
Key key_of(const CompartmentalModel& m) {
    Key k;
    for (const auto& e : m.edges()) {
        k.push_back(e.from);
        k.push_back(e.to);
    }
    k.push_back(to_mask(m.inputs()));
    k.push_back(to_mask(m.outputs()));
    k.push_back(to_mask(m.leaks()));
    return k;
}

std::vector<std::vector<Edge>> labeled_trees(int n) {
    std::vector<std::vector<Edge>> out;
    if (n == 1) return {{}};
    if (n == 2) return {{{1, 2}, {2, 1}}};
    // Decode every Pruefer sequence of length n - 2.
    std::vector<int> seq(n - 2, 1);
    while (true) {
        std::vector<int> degree(n + 1, 1);
        for (int v : seq) ++degree[v];
        std::vector<Edge> edges;
        for (int v : seq) {
            int leaf = 1;
            while (degree[leaf] != 1) ++leaf;
            edges.push_back({leaf, v});
            edges.push_back({v, leaf});
            --degree[leaf];
            --degree[v];
        }
        int u = 0;
        for (int v = 1; v <= n; ++v) {
            if (degree[v] == 1) {
                if (u == 0) {
                    u = v;
                } else {
                    edges.push_back({u, v});
                    edges.push_back({v, u});
                }
            }
        }
        out.push_back(std::move(edges));
        int i = n - 3;
        while (i >= 0 && seq[i] == n) seq[i--] = 1;
        if (i < 0) break;
        ++seq[i];
    }
    return out;
}

std::vector<std::vector<int>> symmetry_group(const SweepOptions& o) {
    const int n = o.n;
    std::vector<std::vector<int>> group;
    if (o.family == Family::Cycle) {
        for (int s = 0; s < n; ++s) group.push_back(rotation(n, s));
    } else if (o.family == Family::Catenary) {
        std::vector<int> id(n + 1);
        std::iota(id.begin(), id.end(), 0);
        group.push_back(id);
        std::vector<int> mirror(n + 1, 0);
        for (int q = 1; q <= n; ++q) mirror[q] = n + 1 - q;
        group.push_back(mirror);
    } else {
        std::vector<int> perm(n + 1);
        std::iota(perm.begin(), perm.end(), 0);
        do group.push_back(perm);
        while (std::next_permutation(perm.begin() + 1, perm.end()));
    }
    return group;
}

}  // namespace

std::vector<CompartmentalModel> all_configurations(const SweepOptions& o) {
    if (o.n < 1 || o.n > 7) throw PreconditionViolated("sweeps support 1 <= n <= 7");
    if (o.family == Family::Cycle && o.n < 3) throw PreconditionViolated("cycles need n >= 3");
    const int n = o.n;
    const int full = (1 << n) - 1;
    std::vector<std::vector<Edge>> graphs;
    if (o.family == Family::Cycle) {
        graphs.push_back(make_cycle(n, {1}, {1}, {}).edges());
    } else if (o.family == Family::Catenary) {
        graphs.push_back(make_catenary(n, {1}, {1}, {}).edges());
    } else {
        graphs = labeled_trees(n);
    }
    std::vector<CompartmentalModel> out;
    for (const auto& edges : graphs) {
        for (int in = 1; in <= full; ++in) {
            if (o.single_in_out && std::popcount(static_cast<unsigned>(in)) != 1) continue;
            for (int outm = 1; outm <= full; ++outm) {
                if (o.single_in_out && std::popcount(static_cast<unsigned>(outm)) != 1) continue;
                for (int leak = 0; leak <= full; ++leak) {
                    if (o.max_leaks >= 0 && std::popcount(static_cast<unsigned>(leak)) > o.max_leaks) continue;
                    out.emplace_back(n, edges, from_mask(in), from_mask(outm), from_mask(leak));
                }
            }
        }
    }
    return out;
}

std::vector<CompartmentalModel> sweep_configurations(const SweepOptions& o) {
    const auto group = symmetry_group(o);
    std::map<Key, CompartmentalModel> orbits;
    for (const auto& m : all_configurations(o)) {
        std::optional<Key> best;
        std::optional<CompartmentalModel> rep;
        for (const auto& perm : group) {
            auto r = m.relabeled(perm);
            auto k = key_of(r);
            if (!best || k < *best) {
                best = std::move(k);
                rep = std::move(r);
            }
        }
        orbits.try_emplace(std::move(*best), std::move(*rep));
    }
    std::vector<CompartmentalModel> out;
    out.reserve(orbits.size());
    for (auto& [k, m] : orbits) out.push_back(std::move(m));
    return out;
}

bool tree_law(const CompartmentalModel& model) {
    const Shape s = shape_of(model).shape;
    if (s != Shape::Catenary && s != Shape::BidirectedTree) throw PreconditionViolated("model is not a bidirected tree");
    if (model.inputs().size() != 1 || model.outputs().size() != 1) {
        throw PreconditionViolated("tree law needs one input and one output");
    }
    const int j = *model.inputs().begin();
    const int p = *model.outputs().begin();
    return model.leaks().size() <= 1 && (j == p || model.has_edge(j, p));
}

std::optional<bool> combinatorial_verdict(const CompartmentalModel& model) {
    const Shape s = shape_of(model).shape;
    if (s == Shape::DirectedCycle) return classify_cycle(model).verdict == Verdict::Identifiable;
    if ((s == Shape::Catenary || s == Shape::BidirectedTree) && model.inputs().size() == 1 &&
        model.outputs().size() == 1) {
        return tree_law(model);
    }
    return std::nullopt;
}

SweepRow analyze_row(const CompartmentalModel& model, const RankOptions& rank) {
    SweepRow row{model, shape_of(model).shape, combinatorial_verdict(model)};
    const auto a = is_identifiable(model, rank);
    row.verdict_rank = a.identifiable;
    for (const auto& [v, st] : a.per_param) {
        (st == ParamStatus::LocallyIdentifiable ? row.params_local : row.params_non).push_back(v);
    }
    row.agree = !row.verdict_comb || *row.verdict_comb == row.verdict_rank;
    return row;
}

std::size_t SweepReport::disagreements() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.agree; }));
}

SweepReport sweep_models(const std::vector<CompartmentalModel>& models, const SweepOptions& options, bool parallel) {
    SweepReport report;
    report.family = to_string(options.family);
    report.n = options.n;
    report.seed = options.rank.seed;
    report.prime = options.rank.prime;
    report.trials = options.rank.trials;
    RankOptions inner = options.rank;
    inner.parallel = false;

    std::vector<std::optional<SweepRow>> rows(models.size());
    if (parallel) {
        // Errors cannot cross the OpenMP region; collect the first and rethrow.
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < models.size(); ++i) {
            try {
                rows[i] = analyze_row(models[i], inner);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (std::size_t i = 0; i < models.size(); ++i) rows[i] = analyze_row(models[i], inner);
    }
    for (auto& r : rows) report.rows.push_back(std::move(*r));
    return report;
}

SweepReport run_sweep(const SweepOptions& options) { return sweep_models(sweep_configurations(options), options, true); }

SweepReport run_sweep_serial(const SweepOptions& options) {
    return sweep_models(sweep_configurations(options), options, false);
}

namespace {

std::string join_set(const std::set<int>& s) {
    std::string out;
    for (int v : s) out += (out.empty() ? "" : " ") + std::to_string(v);
    return out;
}

std::string join_edges(const std::vector<Edge>& edges) {
    std::string out;
    for (const auto& e : edges) out += (out.empty() ? "" : " ") + std::to_string(e.from) + ">" + std::to_string(e.to);
    return out;
}

std::string join_vars(const std::vector<Var>& vs) {
    std::string out;
    for (Var v : vs) out += (out.empty() ? "" : " ") + v.name();
    return out;
}

std::string verdict_word(std::optional<bool> v) {
    if (!v) return "n/a";
    return *v ? "identifiable" : "unidentifiable";
}

}  // namespace

std::string report_csv(const SweepReport& report) {
    std::ostringstream os;
    os << "n,edges,in,out,leak,shape,verdict_comb,verdict_rank,params_local,params_non,agree\n";
    for (const auto& r : report.rows) {
        const auto& m = r.model;
        os << m.n() << ',' << join_edges(m.edges()) << ',' << join_set(m.inputs()) << ',' << join_set(m.outputs())
           << ',' << join_set(m.leaks()) << ',' << to_string(r.shape) << ',' << verdict_word(r.verdict_comb) << ','
           << verdict_word(r.verdict_rank) << ',' << join_vars(r.params_local) << ',' << join_vars(r.params_non)
           << ',' << (r.agree ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string report_json(const SweepReport& report) {
    nlohmann::ordered_json doc;
    doc["version"] = kVersion;
    doc["family"] = report.family;
    doc["n"] = report.n;
    doc["seed"] = report.seed;
    doc["prime"] = report.prime;
    doc["trials"] = report.trials;
    doc["disagreements"] = report.disagreements();
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["model"] = model_to_json(r.model);
        row["shape"] = to_string(r.shape);
        row["verdict_comb"] = verdict_word(r.verdict_comb);
        row["verdict_rank"] = verdict_word(r.verdict_rank);
        auto names = [](const std::vector<Var>& vs) {
            auto a = nlohmann::ordered_json::array();
            for (Var v : vs) a.push_back(v.name());
            return a;
        };
        row["params_local"] = names(r.params_local);
        row["params_non"] = names(r.params_non);
        row["agree"] = r.agree;
        rows.push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoFailure("cannot open " + path + " for writing");
    f << text;
    if (!f) throw IoFailure("write to " + path + " failed");
}

}  // namespace compident

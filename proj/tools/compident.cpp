// compident: identifiability of linear compartmental models from the command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "compident/catenary.hpp"
#include "compident/cycle.hpp"
#include "compident/error.hpp"
#include "compident/forests.hpp"
#include "compident/ident.hpp"
#include "compident/ioeq.hpp"
#include "compident/routes.hpp"
#include "compident/singular.hpp"
#include "compident/sweep.hpp"

using namespace compident;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitDiscrepancy = 2;

struct Globals {
    std::string format = "text";
    std::uint64_t seed = kDefaultSeed;
    int trials = 5;
};

CompartmentalModel load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoFailure("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_model(ss.str());
}

RankOptions rank_options(const Globals& g) {
    RankOptions o;
    o.seed = g.seed;
    o.trials = g.trials;
    return o;
}

json names(const std::vector<Var>& vs) {
    json a = json::array();
    for (Var v : vs) a.push_back(v.name());
    return a;
}

json strings(const std::vector<Polynomial>& ps) {
    json a = json::array();
    for (const auto& p : ps) a.push_back(p.to_string());
    return a;
}

void print(const json& doc) { std::cout << doc.dump(2) << '\n'; }

int cmd_validate(const Globals& g, const std::string& spec) {
    const auto m = load(spec);
    const auto info = shape_of(m);
    if (g.format == "json") {
        json doc;
        doc["valid"] = true;
        doc["model"] = model_to_json(m);
        doc["shape"] = to_string(info.shape);
        doc["strongly_connected"] = info.strongly_connected;
        doc["parameters"] = names(m.parameters());
        print(doc);
    } else {
        std::cout << "valid: n=" << m.n() << ", shape " << to_string(info.shape)
                  << (info.strongly_connected ? ", strongly connected" : ", not strongly connected") << "\nparameters:";
        for (Var v : m.parameters()) std::cout << ' ' << v.name();
        std::cout << '\n';
    }
    return 0;
}

int cmd_io_eq(const Globals& g, const std::string& spec, std::optional<int> output) {
    const auto m = load(spec);
    std::vector<IoEquation> eqs;
    if (output) {
        eqs.push_back(io_equation(m, *output));
    } else {
        eqs = io_equations(m);
    }
    if (g.format == "json") {
        json doc = json::array();
        for (const auto& eq : eqs) {
            json e;
            e["output"] = eq.output;
            e["lhs"] = strings(eq.lhs);
            json rhs = json::object();
            for (const auto& [j, cs] : eq.rhs) rhs[std::to_string(j)] = strings(cs);
            e["rhs"] = rhs;
            doc.push_back(e);
        }
        print(doc);
    } else {
        for (const auto& eq : eqs) std::cout << format_io_equation(eq) << '\n';
    }
    return 0;
}

int cmd_coeff_map(const Globals& g, const std::string& spec, const std::string& route_name, bool diff) {
    const auto m = load(spec);
    const Route route = parse_route(route_name);
    const auto cm = coefficient_map_via(m, route);
    if (g.format == "json") {
        json doc = json::array();
        for (std::size_t i = 0; i < cm.size(); ++i) {
            doc.push_back({{"label", cm.labels[i].to_string()}, {"coefficient", cm.coeffs[i].to_string()}});
        }
        print(doc);
    } else {
        if (g.format == "csv") std::cout << "label,coefficient\n";
        const char* sep = g.format == "csv" ? "," : ": ";
        for (std::size_t i = 0; i < cm.size(); ++i) {
            std::cout << cm.labels[i].to_string() << sep << cm.coeffs[i].to_string() << '\n';
        }
    }
    if (!diff) return 0;
    const Route other = route == Route::Determinant ? Route::Forests : Route::Determinant;
    const auto d = compare_maps(cm, coefficient_map_via(m, other));
    for (const auto& p : d.only_left) std::cerr << "only in " << to_string(route) << ": " << p << '\n';
    for (const auto& p : d.only_right) std::cerr << "only in " << to_string(other) << ": " << p << '\n';
    if (d.equal()) std::cerr << to_string(route) << " and " << to_string(other) << " agree\n";
    return d.equal() ? 0 : kExitDiscrepancy;
}

int cmd_analyze(const Globals& g, const std::string& spec) {
    const auto m = load(spec);
    const auto a = is_identifiable(m, rank_options(g));
    if (g.format == "json") {
        json doc;
        doc["identifiable"] = a.identifiable;
        doc["rank"] = a.generic_rank;
        doc["target"] = a.full_rank_target;
        json per = json::object();
        for (Var v : a.param_order) per[v.name()] = to_string(a.per_param.at(v));
        doc["per_param"] = per;
        doc["coefficients"] = a.coeff_labels;
        doc["trials"] = a.trials;
        doc["seed"] = a.seed;
        doc["prime"] = a.field_prime;
        print(doc);
    } else {
        std::cout << (a.identifiable ? "identifiable" : "unidentifiable") << ": generic rank " << a.generic_rank
                  << " of " << a.full_rank_target << " (" << a.trials << " trials, seed " << a.seed << ")\n";
        for (Var v : a.param_order) std::cout << "  " << v.name() << ' ' << to_string(a.per_param.at(v)) << '\n';
    }
    return 0;
}

int cmd_classify(const Globals& g, const std::string& spec) {
    const auto m = load(spec);
    json doc;
    std::string text;
    const Shape shape = shape_of(m).shape;
    if (shape == Shape::DirectedCycle) {
        const auto c = classify_cycle(m);
        doc["exceptional"] = c.is_exceptional;
        doc["leak_interlacing"] = c.is_leak_interlacing;
        doc["verdict"] = to_string(c.verdict);
        doc["witness"] = c.witness ? json::array({c.witness->first, c.witness->second}) : json();
        text = to_string(c.verdict);
        if (c.is_exceptional) text += " (exceptional)";
        if (c.witness) {
            text += c.is_exceptional ? "; leaks " : "; no input or output strictly after leak ";
            text += std::to_string(c.witness->first) + (c.is_exceptional ? " and " : " up to leak ") +
                    std::to_string(c.witness->second);
        }
    } else if (auto v = combinatorial_verdict(m)) {
        doc["verdict"] = *v ? "Identifiable" : "Unidentifiable";
        doc["rule"] = "bidirected tree: at most one leak and input-output distance at most one";
        text = std::string(*v ? "Identifiable" : "Unidentifiable") + " by the bidirected-tree rule";
    } else {
        throw NotApplicable("no combinatorial classifier for this model; use analyze");
    }
    if (g.format == "json") {
        print(doc);
    } else {
        std::cout << text << '\n';
    }
    return 0;
}

int cmd_singular(const Globals& g, const std::string& spec) {
    const auto m = load(spec);
    const auto s = singular_locus(m, rank_options(g));
    const auto f = factor_by_trial_division(s.polynomial, candidate_linear_forms(m));
    const std::string shown = f.complete() ? f.to_string() : s.polynomial.to_string();
    std::vector<Hyperplane> predicted;
    if (shape_of(m).shape == Shape::DirectedCycle && m.inputs() == std::set<int>{1}) predicted = predicted_hyperplanes(m);
    if (g.format == "json") {
        json doc;
        doc["polynomial"] = s.polynomial.to_string();
        doc["factored"] = f.complete() ? json(f.to_string()) : json();
        doc["square"] = s.square;
        doc["maximal_minors"] = s.minors;
        json ph = json::array();
        for (const auto& h : predicted) ph.push_back({{"tag", h.tag}, {"form", h.form.to_string()}});
        doc["predicted_hyperplanes"] = ph;
        print(doc);
    } else {
        std::cout << shown << " = 0\n";
        if (!s.square) std::cout << "(gcd of " << s.minors << " maximal minors)\n";
        for (const auto& h : predicted) std::cout << "predicted " << h.tag << ": " << h.form << " = 0\n";
    }
    return 0;
}

int cmd_conjecture(const Globals& g, const std::string& spec, int samples, bool extended) {
    const auto m = load(spec);
    const auto rows = explore_conjecture(m, samples, rank_options(g),
                                         extended ? ConjectureScope::Extended : ConjectureScope::Literal);
    if (g.format == "json") {
        json doc = json::array();
        for (const auto& r : rows) {
            doc.push_back({{"a", r.a},
                           {"leak", r.leak},
                           {"hyperplane", r.hyperplane.form.to_string()},
                           {"in_range", r.in_range},
                           {"supported", r.evidence.contained},
                           {"samples", r.evidence.samples}});
        }
        print(doc);
    } else {
        std::cout << conjecture_csv(rows);
    }
    return 0;
}

int cmd_forests(const Globals& g, const std::string& spec, std::optional<int> m_only, std::optional<int> star,
                std::vector<int> pair, bool emit) {
    const auto m = load(spec);
    const LeakExtendedGraph graph(m, star);
    std::optional<std::pair<int, int>> connect;
    if (pair.size() == 2) connect = std::make_pair(pair[0], pair[1]);
    json doc = json::array();
    for (int k = 0; k <= m.n(); ++k) {
        if (m_only && k != *m_only) continue;
        std::vector<std::string> listed;
        std::size_t count = 0;
        enumerate_incoming_forests(graph, k, connect, [&](const Forest& f) {
            ++count;
            if (!emit) return;
            std::string s;
            for (std::size_t e : f) {
                const auto& le = graph.edges()[e];
                s += (s.empty() ? "" : " ") + std::to_string(le.from) + ">" + std::to_string(le.to);
            }
            listed.push_back(s.empty() ? "(empty)" : s);
        });
        if (g.format == "json") {
            json row{{"m", k}, {"count", count}};
            if (emit) row["forests"] = listed;
            doc.push_back(row);
        } else {
            std::cout << "m=" << k << ": " << count << '\n';
            for (const auto& s : listed) std::cout << "  " << s << '\n';
        }
    }
    if (g.format == "json") print(doc);
    return 0;
}

SweepOptions sweep_options(const Globals& g, const std::string& family, int n, int max_leaks, bool single) {
    SweepOptions o;
    o.family = parse_family(family);
    o.n = n;
    o.max_leaks = max_leaks;
    o.single_in_out = single;
    o.rank = rank_options(g);
    return o;
}

int cmd_sweep(const Globals& g, const SweepOptions& o, const std::string& out, bool serial) {
    const auto report = serial ? run_sweep_serial(o) : run_sweep(o);
    const std::string doc = g.format == "json" ? report_json(report) : report_csv(report);
    if (out.empty()) {
        std::cout << doc;
    } else {
        write_file(out, doc);
        std::cerr << report.rows.size() << " rows written to " << out << '\n';
    }
    if (report.disagreements() > 0) {
        std::cerr << "DISCREPANCY: " << report.disagreements() << " rows where the two verdicts differ\n";
        return kExitDiscrepancy;
    }
    return 0;
}

int cmd_cross_check(const Globals& g, SweepOptions o) {
    o.single_in_out = true;
    std::size_t checked = 0;
    std::vector<json> failures;
    for (const auto& m : all_configurations(o)) {
        const auto det = coefficient_map(m);
        std::vector<Route> others{Route::Forests};
        if (o.family != Family::Tree || shape_of(m).shape == Shape::Catenary) others.push_back(Route::ClosedForm);
        for (Route r : others) {
            const auto d = compare_maps(det, coefficient_map_via(m, r));
            ++checked;
            if (d.equal()) continue;
            failures.push_back({{"model", model_to_json(m)},
                                {"route", to_string(r)},
                                {"only_determinant", strings(d.only_left)},
                                {"only_route", strings(d.only_right)}});
        }
    }
    if (g.format == "json") {
        json doc;
        doc["family"] = to_string(o.family);
        doc["n"] = o.n;
        doc["comparisons"] = checked;
        doc["discrepancies"] = failures;
        print(doc);
    } else {
        std::cout << to_string(o.family) << " n=" << o.n << ": " << checked << " route comparisons, "
                  << failures.size() << " discrepancies\n";
        for (const auto& f : failures) std::cout << f.dump() << '\n';
    }
    return failures.empty() ? 0 : kExitDiscrepancy;
}

void emit_error(const std::string& code, const std::string& message) {
    json doc;
    doc["error"] = {{"code", code}, {"message", message}};
    std::cout << doc.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generic local identifiability of linear compartmental models"};
    app.require_subcommand(1);
    Globals g;
    if (const char* env = std::getenv("COMPIDENT_SEED")) {
        try {
            g.seed = std::stoull(env);
        } catch (const std::exception&) {
            emit_error("MalformedSpec", std::string("COMPIDENT_SEED is not an unsigned integer: ") + env);
            return kExitError;
        }
    }
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();

    std::string spec;
    auto add_spec = [&](CLI::App* sub) { sub->add_option("spec", spec, "Model spec (JSON file)")->required(); };

    auto* validate = app.add_subcommand("validate", "Parse and check a model spec");
    add_spec(validate);

    auto* io_eq = app.add_subcommand("io-eq", "Input-output equations");
    add_spec(io_eq);
    std::optional<int> output;
    io_eq->add_option("--output", output, "Only this output");

    auto* coeff = app.add_subcommand("coeff-map", "Coefficient map");
    add_spec(coeff);
    std::string route = "determinant";
    bool diff = false;
    coeff->add_option("--route", route)->check(CLI::IsMember({"determinant", "closed-form", "forests"}));
    coeff->add_flag("--diff", diff, "Compare against a second route; exit 2 on mismatch");

    auto* analyze = app.add_subcommand("analyze", "Jacobian rank analysis");
    add_spec(analyze);
    analyze->add_option("--trials", g.trials)->check(CLI::PositiveNumber);
    analyze->add_option("--seed", g.seed);

    auto* classify = app.add_subcommand("classify", "Combinatorial verdict");
    add_spec(classify);

    auto* singular = app.add_subcommand("singular-locus", "Singular-locus polynomial");
    add_spec(singular);
    singular->add_option("--seed", g.seed);

    auto* conj = app.add_subcommand("conjecture", "Evidence for the hyperplane conjecture (CSV)");
    add_spec(conj);
    int samples = 50;
    bool extended = false;
    conj->add_option("--samples", samples)->check(CLI::PositiveNumber);
    conj->add_flag("--extended", extended, "Scan every a outside Leak and every leak");
    conj->add_option("--seed", g.seed);

    auto* forests = app.add_subcommand("forests", "Spanning incoming forests of the leak-extended graph");
    add_spec(forests);
    std::optional<int> m_only, star;
    std::vector<int> pair;
    bool emit = false;
    forests->add_option("-m", m_only, "Only forests with this many edges");
    forests->add_option("--star", star, "Drop the outgoing edges of this vertex");
    forests->add_option("--connect", pair, "Keep forests joining these two vertices")->expected(2);
    forests->add_flag("--emit-edges", emit, "List each forest");

    std::string family = "cycle";
    int n = 3;
    int max_leaks = -1;
    bool single = false;
    auto* sweep = app.add_subcommand("sweep", "Classify every configuration of a family");
    std::string out;
    bool serial = false;
    for (auto* sub : {sweep, app.add_subcommand("cross-check", "Compare coefficient routes over a family")}) {
        sub->add_option("--family", family)->check(CLI::IsMember({"cycle", "catenary", "tree"}));
        sub->add_option("--n", n)->required();
    }
    auto* cross = app.get_subcommand("cross-check");
    sweep->add_option("--max-leaks", max_leaks);
    sweep->add_flag("--single", single, "Only one input and one output");
    sweep->add_option("--out", out, "Write the report here");
    sweep->add_flag("--serial", serial, "Serial reference path");
    sweep->add_option("--trials", g.trials)->check(CLI::PositiveNumber);
    sweep->add_option("--seed", g.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*validate) return cmd_validate(g, spec);
        if (*io_eq) return cmd_io_eq(g, spec, output);
        if (*coeff) return cmd_coeff_map(g, spec, route, diff);
        if (*analyze) return cmd_analyze(g, spec);
        if (*classify) return cmd_classify(g, spec);
        if (*singular) return cmd_singular(g, spec);
        if (*conj) return cmd_conjecture(g, spec, samples, extended);
        if (*forests) return cmd_forests(g, spec, m_only, star, pair, emit);
        if (*sweep) return cmd_sweep(g, sweep_options(g, family, n, max_leaks, single), out, serial);
        if (*cross) return cmd_cross_check(g, sweep_options(g, family, n, -1, true));
    } catch (const Error& e) {
        emit_error(e.code(), e.what());
        return kExitError;
    } catch (const std::exception& e) {
        emit_error("Internal", e.what());
        return kExitError;
    }
    return kExitError;
}

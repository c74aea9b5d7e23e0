#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compident/ident.hpp"
#include "compident/model.hpp"

namespace compident {

inline constexpr const char* kVersion = "0.1.0";

enum class Family { Cycle, Catenary, Tree };
std::string to_string(Family family);
Family parse_family(const std::string& text);  // throws PreconditionViolated

struct SweepOptions {
    Family family = Family::Cycle;
    int n = 3;
    int max_leaks = -1;             // -1: no limit
    bool single_in_out = false;     // only |In| = |Out| = 1
    RankOptions rank;
};

// One model per symmetry orbit: rotations for cycles, the reflection for
// catenaries, all relabelings for bidirected trees (n <= 7). Each model is
// the relabeling with the smallest canonical key, and the list is sorted by
// that key.
std::vector<CompartmentalModel> sweep_configurations(const SweepOptions& options);
// Same enumeration without the reduction, in generation order.
std::vector<CompartmentalModel> all_configurations(const SweepOptions& options);

// Combinatorial verdict when a classifier applies: leak-interlacing for
// cycles, the bidirected-tree law for one-input one-output trees.
std::optional<bool> combinatorial_verdict(const CompartmentalModel& model);
// |Leak| <= 1 and the in-out path has at most one edge. Requires a
// one-input one-output bidirected tree; throws PreconditionViolated.
bool tree_law(const CompartmentalModel& model);

struct SweepRow {
    CompartmentalModel model;
    Shape shape;
    std::optional<bool> verdict_comb;
    bool verdict_rank = false;
    std::vector<Var> params_local;
    std::vector<Var> params_non;
    bool agree = true;
};

struct SweepReport {
    std::string family;
    int n = 0;
    std::uint64_t seed = 0;
    std::uint64_t prime = 0;
    int trials = 0;
    std::vector<SweepRow> rows;
    std::size_t disagreements() const;
};

SweepRow analyze_row(const CompartmentalModel& model, const RankOptions& rank);

// Rows are analyzed in parallel (OpenMP, rank trials serial inside each row)
// and emitted in configuration order. run_sweep_serial is the reference.
SweepReport run_sweep(const SweepOptions& options);
SweepReport run_sweep_serial(const SweepOptions& options);
SweepReport sweep_models(const std::vector<CompartmentalModel>& models, const SweepOptions& options, bool parallel);

// Columns n, edges, in, out, leak, shape, verdict_comb, verdict_rank,
// params_local, params_non, agree.
std::string report_csv(const SweepReport& report);
std::string report_json(const SweepReport& report);
// Writes text to path; throws IoFailure.
void write_file(const std::string& path, const std::string& text);

}  // namespace compident

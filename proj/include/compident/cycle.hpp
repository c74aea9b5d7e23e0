#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "compident/ioeq.hpp"
#include "compident/model.hpp"

namespace compident {

// Residue of q modulo n in [1, n].
int mod_n(int q, int n);

// Throws NotACycle unless the graph is literally 1 -> 2 -> ... -> n -> 1.
void require_cycle(const CompartmentalModel& model);

enum class Verdict { Identifiable, Unidentifiable };
std::string to_string(Verdict v);

struct ExceptionalCheck {
    bool exceptional = false;
    std::optional<std::pair<int, int>> witness;  // (input i, output i - 1)
};
ExceptionalCheck is_exceptional(const CompartmentalModel& model);

struct InterlacingCheck {
    bool interlacing = false;
    bool exceptional = false;
    // (l_a, l_{a+1}) of the first arc {l_a + 1, ..., l_{a+1}} missing In and Out.
    std::optional<std::pair<int, int>> witness;
};
InterlacingCheck is_leak_interlacing(const CompartmentalModel& model);

struct CycleClassification {
    bool is_exceptional = false;
    bool is_leak_interlacing = false;
    Verdict verdict = Verdict::Unidentifiable;
    std::optional<std::pair<int, int>> witness;
};
// Purely combinatorial; never touches the rank engine.
CycleClassification classify_cycle(const CompartmentalModel& model);

// Arcs {l_a + 1, ..., l_{a+1}} for consecutive leaks (wrap arc last), as the
// pair (l_a, l_{a+1}) and the member compartments in path order.
struct LeakArc {
    int from_leak;
    int to_leak;
    std::vector<int> members;
};
std::vector<LeakArc> leak_arcs(const CompartmentalModel& model);

// Requires In = {1}, Out = {p}, Leak nonempty (or allow_leak_free, in which
// case Type II is the zero polynomial and is dropped). Entries are tagged with
// their type I..IV; constants are omitted.
CoefficientMap cycle_coefficient_map(const CompartmentalModel& model, bool allow_leak_free = false);
// Any single input: rotate the input to compartment 1, apply the closed form,
// rename parameters and labels back.
CoefficientMap cycle_coefficient_map_any_input(const CompartmentalModel& model, bool allow_leak_free = false);

// k_{i+1,i} ... k_{j,j-1} along the cycle; 1 when i == j.
Polynomial kappa_path(const CompartmentalModel& model, int i, int j);
// Sum over q in {j+1, ..., i-1} (cyclic) of k_{q+1,q} plus k_{0q} when q leaks.
// Throws UndefinedForAdjacentPair when j == i - 1.
Polynomial e_star_one(const CompartmentalModel& model, int i, int j);

// Compartment relabeling q -> q - shift (mod n).
std::vector<int> rotation(int n, int shift);
CompartmentalModel rotate(const CompartmentalModel& model, int shift);

bool is_minimally_leak_interlacing(const CompartmentalModel& model);
bool in_exceptional_family(const CompartmentalModel& model);
// Keeps one marker per arc following the two-case construction with
// lowest-index choices. Throws NotApplicable when |Leak| < 2, the model is not
// leak-interlacing, or no non-exceptional selection exists.
CompartmentalModel find_minimal_interlacing_submodel(const CompartmentalModel& model);

}  // namespace compident

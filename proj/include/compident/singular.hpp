#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "compident/ident.hpp"
#include "compident/model.hpp"
#include "compident/polynomial.hpp"

namespace compident {

inline constexpr std::size_t kMaxSquareLocusParams = 12;
inline constexpr std::size_t kMaxMinorGcdParams = 10;

// A linear form h; the hyperplane is {h = 0}. `tag` records where it came
// from, e.g. "(1)" for a predicted hyperplane.
struct Hyperplane {
    Polynomial form;
    std::string tag;
};

// Throws PreconditionViolated unless h has total degree exactly 1.
Hyperplane make_hyperplane(Polynomial h, std::string tag = {});

struct SingularLocus {
    Polynomial polynomial;
    bool square = true;  // false: gcd of maximal minors
    std::size_t minors = 1;
};

// Determinant of the square Jacobian, or the gcd of all maximal minors.
// Sign-normalized so the graded-lex leading coefficient is positive.
// Throws NotIdentifiable (locus would be everything) or TooLarge.
SingularLocus singular_locus(const CompartmentalModel& model, const RankOptions& options = {});
Polynomial singular_locus_polynomial(const CompartmentalModel& model, const RankOptions& options = {});

struct HyperplaneEvidence {
    bool contained = false;  // false is certain; true means every sample was rank deficient
    int samples = 0;         // points actually evaluated
    Var solved_for;
};

// Samples points on {h = 0} by solving h for one variable and drawing the rest
// uniformly from GF(p)*. Stops at the first full-rank point.
// Throws UnsolvableConstraint or NotIdentifiable.
HyperplaneEvidence contains_hyperplane(const CompartmentalModel& model, const Polynomial& h, int samples,
                                       const RankOptions& options = {});

// Hyperplanes the cycle theorems guarantee, tagged "(1)", "(2)", "(3)".
// Requires an identifiable cycle with In = {1}; throws PreconditionViolated.
std::vector<Hyperplane> predicted_hyperplanes(const CompartmentalModel& model);

// prod_{i != l} k_{i+1,i} * prod_{2<=i<j<=n} (kt_i - kt_j), with
// kt_l = k_{l+1,l} + k_{0l} and kt_i = k_{i+1,i} otherwise.
Polynomial vandermonde_locus(int n, int leak);

struct ConjectureRow {
    int a = 0;
    int leak = 0;
    bool in_range = true;  // a in [p-1] \ Leak and l in Leak cap [p]
    Hyperplane hyperplane;
    HyperplaneEvidence evidence;
};

// Literal: a in [p-1] \ Leak and l in Leak cap [p]. Extended: every a not in
// Leak and every l in Leak, with rows outside the literal range flagged.
enum class ConjectureScope { Literal, Extended };

// Candidate hyperplanes {k_{l+1,l} + k_{0l} = k_{a+1,a}}, each with sampled
// evidence. Requires an identifiable cycle with In = {1}, Out = {p}.
std::vector<ConjectureRow> explore_conjecture(const CompartmentalModel& model, int samples = 50,
                                              const RankOptions& options = {},
                                              ConjectureScope scope = ConjectureScope::Literal);
std::string conjecture_csv(const std::vector<ConjectureRow>& rows);

struct Factored {
    mpz_class unit = 1;
    std::vector<std::pair<Polynomial, int>> factors;
    Polynomial rest = 1;  // cofactor left after trial division
    bool complete() const { return rest.is_constant(); }
    std::string to_string() const;
};

// Repeated trial division of p by each candidate.
Factored factor_by_trial_division(const Polynomial& p, const std::vector<Polynomial>& candidates);
// Parameters, predicted hyperplanes and, for cycles, the differences
// kt_i - kt_j of the outgoing sums.
std::vector<Polynomial> candidate_linear_forms(const CompartmentalModel& model);

}  // namespace compident

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "compident/ioeq.hpp"
#include "compident/matrix.hpp"
#include "compident/model.hpp"
#include "compident/modular.hpp"

namespace compident {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct RankOptions {
    int trials = 5;
    std::uint64_t prime = modp::kDefaultPrime;
    std::uint64_t seed = kDefaultSeed;
    bool parallel = true;  // OpenMP over trials; false runs the serial reference
};

enum class ParamStatus { LocallyIdentifiable, NonIdentifiable };
std::string to_string(ParamStatus status);  // "local" / "non"

struct JacobianAnalysis {
    std::vector<ParameterId> param_order;
    std::vector<std::string> coeff_labels;
    std::size_t generic_rank = 0;
    std::size_t full_rank_target = 0;
    bool identifiable = false;
    std::map<ParameterId, ParamStatus> per_param;
    int trials = 0;
    std::uint64_t field_prime = 0;
    std::uint64_t seed = 0;
};

// Entry (r, c) = d coeff_r / d params[c]. Throws UncoveredVariable if a
// coefficient mentions a variable outside params.
SymbolicMatrix jacobian(const CoefficientMap& cm, const std::vector<ParameterId>& params);

// Coordinates in [1, p-1] drawn from mt19937_64(seed); trial t takes the
// t-th block of `dims` draws.
std::vector<std::vector<std::uint64_t>> random_points(std::size_t dims, int trials, std::uint64_t prime,
                                                      std::uint64_t seed);

// Jacobian compiled for fast modular evaluation. Slots follow `vars`.
class CompiledMatrix {
public:
    CompiledMatrix(const SymbolicMatrix& m, const std::vector<Var>& vars, std::uint64_t prime);
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    // Row-major values at the point (indexed like `vars`).
    std::vector<std::uint64_t> evaluate(std::span<const std::uint64_t> point) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<CompiledPolynomial> cells_;
};

// Sorted variables occurring anywhere in the matrix.
std::vector<Var> matrix_variables(const SymbolicMatrix& m);

// Maximum rank over `trials` random GF(p) points. Requires trials >= 1 and
// p > 2^30.
std::size_t generic_rank(const SymbolicMatrix& J, const RankOptions& options = {});
std::size_t generic_rank_serial(const SymbolicMatrix& J, const RankOptions& options = {});

// theta is LocallyIdentifiable iff appending the unit row e_theta does not
// raise the generic rank. Column c of J belongs to params[c].
std::map<ParameterId, ParamStatus> per_param_flags(const SymbolicMatrix& J, const std::vector<ParameterId>& params,
                                                   const RankOptions& options = {});

// Rank analysis of an already computed coefficient map.
JacobianAnalysis analyze_map(const CoefficientMap& cm, const std::vector<ParameterId>& params,
                             const RankOptions& options = {});
// Throws NotStronglyConnected.
JacobianAnalysis is_identifiable(const CompartmentalModel& model, const RankOptions& options = {});

// Coefficient list whose entries are quotients num/den.
struct RationalMap {
    struct Entry {
        Polynomial num;
        Polynomial den;
    };
    std::vector<CoefficientLabel> labels;
    std::vector<Entry> entries;
};

RationalMap as_rational(const CoefficientMap& cm);
// Replaces entry i by entry_i / entry_j (0-based). Throws PreconditionViolated
// for i == j or out-of-range indices and ZeroDivisorCoefficient if entry j is
// the zero polynomial.
RationalMap quotient_transform(const RationalMap& map, std::size_t i, std::size_t j);
RationalMap quotient_transform(const CoefficientMap& cm, std::size_t i, std::size_t j);

// Generic rank of the Jacobian of a rational map, evaluated with the quotient
// rule. A point where some denominator vanishes contributes rank 0.
std::size_t rational_generic_rank(const RationalMap& map, const std::vector<ParameterId>& params,
                                  const RankOptions& options = {});

}  // namespace compident

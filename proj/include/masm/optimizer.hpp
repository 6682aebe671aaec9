#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "masm/mask.hpp"
#include "masm/rational.hpp"

namespace masm {

/// ||F m||_4^4 = sum_k acf[k]^2 / N.
Rational objective_exact(const TransmissionMask& mask);
double objective(const TransmissionMask& mask);
long long acf_energy(const TransmissionMask& mask);

enum class Method { exhaustive, local_search, branch_and_bound };
enum class Certificate { global_optimum, bound_gap, heuristic };

std::string to_string(Method m);
std::string to_string(Certificate c);

struct OptimizationResult {
  TransmissionMask best_mask;
  Rational objective;
  Method method;
  Certificate certificate;
  /// Objective minus the proven lower bound (0 for a closed search, NaN for heuristics).
  double gap;
  std::uint64_t visited;
  /// Branch and bound only: value of the relaxation at the root.
  std::optional<double> root_bound;
};

nlohmann::json to_json(const OptimizationResult& r);

constexpr std::uint64_t kDefaultExhaustiveBudget = 100'000'000;
constexpr std::uint64_t kDefaultNodeBudget = 1'000'000;

/// Binary necklaces of length n and weight w: (1/n) sum_{d | gcd(n,w)} phi(d) C(n/d, w/d).
std::uint64_t necklace_count(std::size_t n, std::size_t weight);

/// Global minimum over rotation classes; the winner is the lexicographically
/// smallest necklace among the minimizers. Throws BudgetExceeded when the
/// necklace count is above budget.
OptimizationResult exhaustive(std::size_t n, std::size_t weight, std::uint64_t budget = kDefaultExhaustiveBudget);

/// Experimental: minimum PESL over necklaces, N <= 16.
OptimizationResult exhaustive_pesl(std::size_t n, std::size_t weight);

/// Steepest descent over moves of a single 1 to a 0 position.
TransmissionMask steepest_descent(const TransmissionMask& start, std::uint64_t* moves = nullptr);
/// Restart r starts from a uniformly random mask drawn from stream (seed, r).
OptimizationResult local_search(std::size_t n, std::size_t weight, std::uint64_t seed, std::size_t restarts);

/// Bound on acf energy for a bit vector x in [0,1]^n with the given bits fixed and
/// sum x = weight. fixed[i] is -1 for free entries.
double relaxation_lower_bound(std::size_t n, std::size_t weight, const std::vector<int>& fixed);

/// Depth-first search on bit fixings with m(0) = 1. The budget counts nodes.
OptimizationResult branch_and_bound(std::size_t n, std::size_t weight, std::uint64_t budget = kDefaultNodeBudget);

}  // namespace masm

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "masm/constellation.hpp"
#include "masm/mask.hpp"

namespace masm {

inline constexpr const char* kVersion = "0.1.0";

/// Number of bins k >= 1 whose value differs from the most frequent value over k >= 1.
std::size_t bins_off_modal_level(std::span<const long long> values);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct ScalingRow {
  std::string family;
  std::string constellation;
  std::size_t n;
  std::size_t weight;
  double eargi;
  /// Mean of the expected mainlobe over k >= 1.
  double mean_mainlobe;
  double ratio;
};

/// EARGI over squared mean mainlobe for m-sequences, contiguous pulses and the
/// random-mask closed form at N = 2^d - 1, weight 2^(d-1) - 1.
std::vector<ScalingRow> scaling_rows(unsigned d_min, unsigned d_max, std::span<const Constellation> constellations);

struct SliceSummary {
  std::size_t n;
  double rho;
  std::size_t k;
  /// R(k, l) / (a^2 + (mu4 - 1) a) for every l.
  std::vector<double> normalized;
  double reference;
  /// Mean and max of the normalized slice over l not in {0, k}.
  double mean_normalized;
  double peak_normalized;
};

SliceSummary singer_slice(unsigned pg_n, std::uint64_t q, std::size_t k, double mu4);

struct NeprgiCurve {
  std::string name;
  TransmissionMask mask;
  std::vector<std::size_t> blind;
  /// Entry 0 unused.
  std::vector<double> neprgi;
};

/// The slow-time m-sequence mask (degree 6, T = 16) and the three reference
/// stagger plans, under the given mu4. With common_blind every curve uses the
/// slow-time blind zone; otherwise each mask uses its own.
std::vector<NeprgiCurve> fig7_curves(double mu4, bool common_blind);

struct Fig7Fraction {
  std::string name;
  std::size_t compared;
  std::size_t at_least_10x;
  double fraction() const { return compared ? static_cast<double>(at_least_10x) / static_cast<double>(compared) : 0.0; }
};

/// For each stagger curve, the fraction of delays visible to both masks where
/// the stagger NEPRGI is at least 10 times the slow-time NEPRGI.
std::vector<Fig7Fraction> fig7_fractions(const std::vector<NeprgiCurve>& curves);

struct RecipeOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 2000;
  std::size_t threads = 0;
  bool common_blind = false;
  std::filesystem::path output_dir = "out";
};

const std::vector<std::string>& recipe_names();

/// Runs a recipe, writes its data files plus manifest.json under
/// output_dir/<name>, and returns the manifest.
nlohmann::json run_recipe(const std::string& name, const RecipeOptions& options);

}  // namespace masm

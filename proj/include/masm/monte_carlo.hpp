#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include "masm/constellation.hpp"
#include "masm/mask.hpp"

namespace masm {

struct McConfig {
  std::size_t trials = 2000;
  std::uint64_t seed = 0;
  Constellation constellation = make_psk(4);
  /// 0 reads MASM_THREADS (itself 0 = hardware concurrency).
  std::size_t threads = 0;
};

struct McEstimate {
  double mean;
  double std_error;
  std::size_t trials;
  /// Per-trial values in trial order.
  std::vector<double> samples;
};

struct SigmaCheck {
  bool pass;
  /// |mean - expected| / std_error, or 0 for a zero-variance stream.
  double z;
  bool degenerate;
};

/// |mean - expected| <= 3 std_error; zero-variance streams need |mean - expected| <= 1e-9.
SigmaCheck three_sigma_check(const McEstimate& est, double expected);

/// Threads from MASM_THREADS, 0 or unset meaning hardware concurrency.
std::size_t resolve_threads(std::size_t requested);

/// Pairwise summation with a fixed split order.
double pairwise_sum(std::span<const double> v);

/// trial i runs with stream_engine(seed, i); the result does not depend on the thread count.
McEstimate run_trials(std::size_t trials, std::uint64_t seed, std::size_t threads,
                      const std::function<double(std::mt19937_64&)>& trial);

/// IRGI of the realized mainlobe, fresh symbols each trial.
McEstimate estimate_irgi(const McConfig& cfg, const TransmissionMask& mask);
/// |r_kk - mean over visible bins of r_pp|^2.
McEstimate estimate_eprgi(const McConfig& cfg, const TransmissionMask& mask, std::span<const std::size_t> blind,
                          std::size_t k);
/// |r(k, l)|^2 with fresh symbols in all three PRIs.
McEstimate estimate_sidelobe(const McConfig& cfg, const TransmissionMask& mask, std::size_t k, std::size_t l);

/// Outer average over Bern(rho) masks, inner average over symbol draws.
McEstimate estimate_random_mask_irgi(std::size_t n, double rho, const Constellation& c, std::size_t mask_trials,
                                     std::size_t symbol_trials, std::uint64_t seed, std::size_t threads = 0);

void write_samples_csv(std::ostream& out, const McEstimate& est);

}  // namespace masm

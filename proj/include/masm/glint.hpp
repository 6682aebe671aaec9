#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "masm/mask.hpp"
#include "masm/rational.hpp"

namespace masm {

/// |r_kk - mean_{l>=1} r_ll|^2, k in 1..N-1.
double rgi(std::span<const double> mainlobe, std::size_t k);
/// mean_{k>=1} r_kk^2 - (mean_{k>=1} r_kk)^2.
double irgi(std::span<const double> mainlobe);
/// Exact IRGI of an integer mainlobe sequence.
Rational irgi_exact(std::span<const long long> mainlobe);

/// EARGI of a deterministic mask under constant-modulus symbols: variance of a_k, k >= 1.
Rational eargi_deterministic_exact(const TransmissionMask& mask);
double eargi_deterministic(const TransmissionMask& mask);
/// Same quantity through the l4 norm of the unitary DFT of the mask.
double eargi_deterministic_frequency(const TransmissionMask& mask);

/// (mu4 - 1) rho (1 - rho) N^2 (rho N - 1) / (N - 1)^2.
double payload_glint_term(std::size_t n, std::size_t weight, double mu4);
double eargi_payload(const TransmissionMask& mask, double mu4);

/// Closed form for i.i.d. Bern(rho) masks; the payload term uses nominal rho.
double eargi_random_mask(std::size_t n, double rho, double mu4);
/// Payload term replaced by its exact expectation over the mask draw,
/// N (N - 2) rho^2 (1 - rho) / (N - 1).
double eargi_random_mask_exact(std::size_t n, double rho, double mu4);

/// ||F m||_4^4 / N - rho^2 with unitary F.
Rational psv_exact(const TransmissionMask& mask);
double psv(const TransmissionMask& mask);
/// ||F m||_4^4 = sum_k acf[k]^2 / N.
Rational l4_norm4_exact(const TransmissionMask& mask);
double l4_norm4_frequency(const TransmissionMask& mask);

/// {k : r_kk^2 <= (c_th / N) sum_l r_ll^2}.
std::vector<std::size_t> blind_range(std::span<const double> mainlobe, double c_th);

double energy_efficiency(double rho);
double throughput(double rho, std::size_t alphabet_size);

constexpr double kDefaultGlintThreshold = 0.5;

struct GlintReport {
  std::vector<double> mainlobe_expectation;
  double irgi;
  double eargi_closed_form;
  double psv;
  std::vector<std::size_t> blind_bins;
  double eta_s;
  double throughput_bits;
};

GlintReport glint_report(const TransmissionMask& mask, double mu4, std::size_t alphabet_size,
                         double c_th = kDefaultGlintThreshold);
nlohmann::json to_json(const GlintReport& r);

}  // namespace masm

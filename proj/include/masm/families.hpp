#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "masm/mask.hpp"

namespace masm {

struct CdsParams {
  std::size_t nu;
  std::size_t k;
  std::size_t lambda;
  friend bool operator==(const CdsParams&, const CdsParams&) = default;
};

struct StaggerPlan {
  std::vector<std::size_t> ratios;
  std::size_t periods_per_prf = 1;
  std::size_t pulse_width = 1;
  /// Samples per unit of stagger ratio.
  std::size_t pri_quantum = 1;

  std::size_t total_length() const;
  std::size_t pulse_count() const { return periods_per_prf * ratios.size(); }
};

TransmissionMask contiguous_pulse(std::size_t n, std::size_t weight);

/// i.i.d. Bern(rho) bits; redraws up to a fixed number of times when the draw
/// is all-zero or all-one.
TransmissionMask bernoulli_mask(std::size_t n, double rho, std::uint64_t seed);

/// Uniformly random mask of exactly the given weight.
TransmissionMask random_fixed_weight_mask(std::size_t n, std::size_t weight, std::uint64_t seed,
                                          std::uint64_t stream = 0);

/// Feedback polynomial x^d + ... + 1 as a bitmask (bit j = coefficient of x^j).
std::uint32_t m_sequence_polynomial(unsigned degree);

/// Length 2^d - 1 m-sequence. The default polarity marks the zeros of the LFSR
/// output (weight 2^(d-1) - 1); complement selects the ones (weight 2^(d-1)).
TransmissionMask m_sequence_mask(unsigned degree, bool complement = false);

/// Quadratic residues mod p, p prime and p = 3 mod 4.
TransmissionMask paley_mask(std::size_t p);

/// Singer difference set of PG(n, q): bit i set iff Tr(alpha^i) = 0.
TransmissionMask singer_mask(unsigned n, std::uint64_t q);

struct CdsTableEntry {
  std::size_t nu;
  std::vector<std::size_t> set;
  std::string label;
  TransmissionMask mask;
  CdsParams params;
};

/// Stored difference sets, certified on first access.
const std::vector<CdsTableEntry>& cds_table();
std::optional<TransmissionMask> known_cds_table(std::size_t n, std::size_t weight);
/// The stored (63,31,15) GMW set.
TransmissionMask gmw63_mask();

TransmissionMask stagger_mask(const StaggerPlan& plan);
StaggerPlan stagger_plan_from_json(const nlohmann::json& j);
/// The three plans of the staggered-PRF comparison (quantum 1).
std::vector<StaggerPlan> reference_stagger_plans();

std::optional<CdsParams> certify_cds(const TransmissionMask& mask);

/// True iff b is a rotation of a multiplied by some t coprime to N (n -> t n mod N).
bool cyclic_decimation_equivalent(const TransmissionMask& a, const TransmissionMask& b);

}  // namespace masm

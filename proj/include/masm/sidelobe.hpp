#pragma once

#include <cstddef>
#include <cstdint>

#include <json.hpp>

#include "masm/mask.hpp"
#include "masm/matrix.hpp"
#include "masm/rational.hpp"

namespace masm {

/// w (N - w) (w - 1) / ((N - 1)(N - 2)): mean expected sidelobe over k, l > 0, k != l.
Rational aesl(std::size_t n, std::size_t weight);

/// Mean of R(k, l) over k, l > 0, k != l.
Rational off_diagonal_mean(const IntMatrix& r);
long long off_diagonal_max(const IntMatrix& r);

long long pesl(const TransmissionMask& mask);
long long pesl_lower_bound(std::size_t n, std::size_t weight);

struct MainlobeRatios {
  double to_aesl;
  double to_pesl;
  double asymptotic_reference;
};

/// Expected mainlobe a^2 + (mu4 - 1) a over AESL and over PESL. Only defined
/// for certified difference-set masks, where a_k is constant for k > 0.
MainlobeRatios mainlobe_to_sidelobe_ratios(const TransmissionMask& mask, double mu4);

struct SidelobeReport {
  Rational aesl;
  long long pesl;
  long long pesl_lower_bound;
  bool is_pesl_ideal;
  double mainlobe_to_aesl;
  double mainlobe_to_pesl;
};

/// Ratios are NaN for masks without a two-level ACF.
SidelobeReport sidelobe_report(const TransmissionMask& mask, double mu4);
nlohmann::json to_json(const SidelobeReport& r);

}  // namespace masm

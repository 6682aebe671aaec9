#include "masm/sidelobe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "masm/error.hpp"
#include "masm/families.hpp"
#include "masm/response.hpp"

namespace masm {

Rational aesl(std::size_t n, std::size_t weight) {
  if (n < 3) throw ValidationError("AESL needs N >= 3");
  if (weight == 0 || weight >= n) throw ValidationError("AESL needs 0 < weight < N");
  const auto nn = static_cast<std::int64_t>(n);
  const auto w = static_cast<std::int64_t>(weight);
  return Rational(w * (nn - w) * (w - 1), (nn - 1) * (nn - 2));
}

Rational off_diagonal_mean(const IntMatrix& r) {
  const std::size_t n = r.rows();
  std::int64_t s = 0;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t l = 1; l < n; ++l)
      if (k != l) s += r(k, l);
  return Rational(s, static_cast<std::int64_t>((n - 1) * (n - 2)));
}

long long off_diagonal_max(const IntMatrix& r) {
  long long best = 0;
  for (std::size_t k = 1; k < r.rows(); ++k)
    for (std::size_t l = 1; l < r.cols(); ++l)
      if (k != l) best = std::max(best, r(k, l));
  return best;
}

long long pesl(const TransmissionMask& mask) { return off_diagonal_max(expected_sidelobe_matrix(mask)); }

long long pesl_lower_bound(std::size_t n, std::size_t weight) { return ceil(aesl(n, weight)); }

MainlobeRatios mainlobe_to_sidelobe_ratios(const TransmissionMask& mask, double mu4) {
  const auto cds = certify_cds(mask);
  if (!cds)
    throw ValidationError("mainlobe-to-sidelobe ratios need a mask with two-level ACF (certified difference set)");
  const double a = static_cast<double>(cds->k) - static_cast<double>(cds->lambda);
  const double mainlobe = a * a + (mu4 - 1.0) * a;
  const double n = static_cast<double>(mask.size());
  const double rho = mask.duty_cycle();
  const auto peak = static_cast<double>(pesl(mask));
  return {mainlobe / to_double(aesl(mask.size(), mask.weight())), peak > 0.0 ? mainlobe / peak : std::numeric_limits<double>::infinity(),
          (1.0 - rho) * n + mu4 + 1.0};
}

SidelobeReport sidelobe_report(const TransmissionMask& mask, double mu4) {
  SidelobeReport r{};
  r.aesl = aesl(mask.size(), mask.weight());
  r.pesl = pesl(mask);
  r.pesl_lower_bound = pesl_lower_bound(mask.size(), mask.weight());
  r.is_pesl_ideal = r.pesl == r.pesl_lower_bound;
  if (certify_cds(mask)) {
    const auto ratios = mainlobe_to_sidelobe_ratios(mask, mu4);
    r.mainlobe_to_aesl = ratios.to_aesl;
    r.mainlobe_to_pesl = ratios.to_pesl;
  } else {
    r.mainlobe_to_aesl = std::numeric_limits<double>::quiet_NaN();
    r.mainlobe_to_pesl = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

nlohmann::json to_json(const SidelobeReport& r) {
  nlohmann::json j{{"aesl", {{"numerator", r.aesl.numerator()}, {"denominator", r.aesl.denominator()},
                             {"value", to_double(r.aesl)}}},
                   {"pesl", r.pesl},
                   {"pesl_lower_bound", r.pesl_lower_bound},
                   {"is_pesl_ideal", r.is_pesl_ideal}};
  // NaN is not representable in JSON.
  j["mainlobe_to_aesl"] = std::isnan(r.mainlobe_to_aesl) ? nlohmann::json(nullptr) : nlohmann::json(r.mainlobe_to_aesl);
  j["mainlobe_to_pesl"] = std::isnan(r.mainlobe_to_pesl) ? nlohmann::json(nullptr) : nlohmann::json(r.mainlobe_to_pesl);
  return j;
}

}  // namespace masm

#include "masm/glint.hpp"

#include <cmath>

#include "masm/error.hpp"
#include "masm/fft.hpp"

namespace masm {
namespace {

void require_length(std::size_t n) {
  if (n < 3) throw ValidationError("mainlobe sequence needs length >= 3");
}

double mean_tail(std::span<const double> v) {
  double s = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) s += v[k];
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

double rgi(std::span<const double> mainlobe, std::size_t k) {
  require_length(mainlobe.size());
  if (k == 0 || k >= mainlobe.size()) throw ValidationError("RGI bin must lie in 1..N-1");
  const double d = mainlobe[k] - mean_tail(mainlobe);
  return d * d;
}

double irgi(std::span<const double> mainlobe) {
  require_length(mainlobe.size());
  // Two-pass variance for accuracy.
  const double m = mean_tail(mainlobe);
  double s = 0.0;
  for (std::size_t k = 1; k < mainlobe.size(); ++k) s += (mainlobe[k] - m) * (mainlobe[k] - m);
  return s / static_cast<double>(mainlobe.size() - 1);
}

Rational irgi_exact(std::span<const long long> mainlobe) {
  require_length(mainlobe.size());
  const auto count = static_cast<std::int64_t>(mainlobe.size() - 1);
  std::int64_t s1 = 0;
  std::int64_t s2 = 0;
  for (std::size_t k = 1; k < mainlobe.size(); ++k) {
    s1 += mainlobe[k];
    s2 += mainlobe[k] * mainlobe[k];
  }
  return Rational(count * s2 - s1 * s1, count * count);
}

Rational eargi_deterministic_exact(const TransmissionMask& mask) {
  return irgi_exact(reception_cross_correlation(mask));
}

double eargi_deterministic(const TransmissionMask& mask) { return to_double(eargi_deterministic_exact(mask)); }

double l4_norm4_frequency(const TransmissionMask& mask) {
  const std::size_t n = mask.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = mask[i] ? 1.0 : 0.0;
  const auto p = fft::power_spectrum(x);
  double s = 0.0;
  for (double v : p) s += v * v;
  return s / (static_cast<double>(n) * static_cast<double>(n));
}

Rational l4_norm4_exact(const TransmissionMask& mask) {
  std::int64_t s = 0;
  for (long long v : periodic_acf(mask)) s += v * v;
  return Rational(s, static_cast<std::int64_t>(mask.size()));
}

double eargi_deterministic_frequency(const TransmissionMask& mask) {
  const double n = static_cast<double>(mask.size());
  const double rho = mask.duty_cycle();
  return n / (n - 1.0) * l4_norm4_frequency(mask) -
         rho * rho * n * n * n * (rho * rho * n - 2.0 * rho + 1.0) / ((n - 1.0) * (n - 1.0));
}

double payload_glint_term(std::size_t n, std::size_t weight, double mu4) {
  const double nn = static_cast<double>(n);
  const double rho = static_cast<double>(weight) / nn;
  return (mu4 - 1.0) * rho * (1.0 - rho) * nn * nn * (rho * nn - 1.0) / ((nn - 1.0) * (nn - 1.0));
}

double eargi_payload(const TransmissionMask& mask, double mu4) {
  if (mu4 < 1.0) throw ValidationError("mu4 must be at least 1");
  return eargi_deterministic(mask) + payload_glint_term(mask.size(), mask.weight(), mu4);
}

double eargi_random_mask(std::size_t n, double rho, double mu4) {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("duty cycle must lie in (0, 1)");
  if (n < 3) throw ValidationError("N must be at least 3");
  const double nn = static_cast<double>(n);
  const double r2 = rho * rho * (1.0 - rho) * (1.0 - rho);
  return r2 * nn * (nn - 2.0) / (nn - 1.0) +
         (mu4 - 1.0) * rho * (1.0 - rho) * nn * nn * (rho * nn - 1.0) / ((nn - 1.0) * (nn - 1.0));
}

double eargi_random_mask_exact(std::size_t n, double rho, double mu4) {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("duty cycle must lie in (0, 1)");
  if (n < 3) throw ValidationError("N must be at least 3");
  const double nn = static_cast<double>(n);
  const double r2 = rho * rho * (1.0 - rho) * (1.0 - rho);
  return r2 * nn * (nn - 2.0) / (nn - 1.0) + (mu4 - 1.0) * nn * (nn - 2.0) * rho * rho * (1.0 - rho) / (nn - 1.0);
}

Rational psv_exact(const TransmissionMask& mask) {
  const auto n = static_cast<std::int64_t>(mask.size());
  const Rational rho(static_cast<std::int64_t>(mask.weight()), n);
  return l4_norm4_exact(mask) / n - rho * rho;
}

double psv(const TransmissionMask& mask) { return to_double(psv_exact(mask)); }

std::vector<std::size_t> blind_range(std::span<const double> mainlobe, double c_th) {
  if (!(c_th > 0.0 && c_th < 1.0)) throw ValidationError("c_th must lie in (0, 1)");
  double total = 0.0;
  for (double v : mainlobe) total += v * v;
  const double threshold = c_th / static_cast<double>(mainlobe.size()) * total;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < mainlobe.size(); ++k)
    if (mainlobe[k] * mainlobe[k] <= threshold) out.push_back(k);
  return out;
}

double energy_efficiency(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("duty cycle must lie in (0, 1)");
  return rho * (1.0 - rho);
}

double throughput(double rho, std::size_t alphabet_size) {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("duty cycle must lie in (0, 1)");
  if (alphabet_size < 2) throw ValidationError("alphabet size must be at least 2");
  return rho * std::log2(static_cast<double>(alphabet_size));
}

GlintReport glint_report(const TransmissionMask& mask, double mu4, std::size_t alphabet_size, double c_th) {
  GlintReport r;
  const auto a = reception_cross_correlation(mask);
  r.mainlobe_expectation.assign(a.begin(), a.end());
  r.irgi = to_double(irgi_exact(a));
  r.eargi_closed_form = eargi_payload(mask, mu4);
  r.psv = psv(mask);
  r.blind_bins = blind_range(r.mainlobe_expectation, c_th);
  r.eta_s = energy_efficiency(mask.duty_cycle());
  r.throughput_bits = throughput(mask.duty_cycle(), alphabet_size);
  return r;
}

nlohmann::json to_json(const GlintReport& r) {
  return nlohmann::json{{"mainlobe_expectation", r.mainlobe_expectation},
                        {"irgi", r.irgi},
                        {"eargi_closed_form", r.eargi_closed_form},
                        {"psv", r.psv},
                        {"blind_bins", r.blind_bins},
                        {"eta_s", r.eta_s},
                        {"throughput_bits", r.throughput_bits}};
}

}  // namespace masm

#include <doctest.h>

#include <cmath>
#include <random>

#include "masm/error.hpp"
#include "masm/families.hpp"
#include "masm/glint.hpp"
#include "oracles.hpp"

using namespace masm;

namespace {

// E over payload of mean_{k>=1} (r_kk - mean_{p>=1} r_pp)^2, with r_kk = sum_t u_t m(t)(1 - m(t+k)),
// u_t i.i.d. with mean 1 and variance mu4 - 1.
double expected_irgi_oracle(const oracle::Bits& m, double mu4) {
  const auto n = static_cast<long long>(m.size());
  std::vector<std::vector<double>> c(m.size(), std::vector<double>(m.size()));
  for (long long t = 0; t < n; ++t)
    for (long long k = 0; k < n; ++k) c[t][k] = oracle::at(m, t) * (1 - oracle::at(m, t + k));
  double total = 0.0;
  std::vector<double> mean_c(m.size(), 0.0);
  double mean_mu = 0.0;
  for (long long t = 0; t < n; ++t) {
    for (long long p = 1; p < n; ++p) mean_c[t] += c[t][p];
    mean_c[t] /= static_cast<double>(n - 1);
    mean_mu += mean_c[t];
  }
  for (long long k = 1; k < n; ++k) {
    double mu = 0.0;
    double var = 0.0;
    for (long long t = 0; t < n; ++t) {
      mu += c[t][k];
      var += (c[t][k] - mean_c[t]) * (c[t][k] - mean_c[t]);
    }
    total += (mu - mean_mu) * (mu - mean_mu) + (mu4 - 1.0) * var;
  }
  return total / static_cast<double>(n - 1);
}

}  // namespace

TEST_CASE("IRGI basic properties") {
  const std::vector<double> flat{5.0, 2.0, 2.0, 2.0, 2.0};
  CHECK(irgi(flat) == 0.0);
  for (std::size_t k = 1; k < 5; ++k) CHECK(rgi(flat, k) == 0.0);
  // r_00 does not enter.
  std::vector<double> v{100.0, 1.0, 2.0, 3.0, 4.0};
  const double base = irgi(v);
  v[0] = -7.0;
  CHECK(irgi(v) == base);
  // Shift invariance and quadratic scaling.
  std::vector<double> s(v);
  for (auto& x : s) x = 3.0 * x + 11.0;
  CHECK(irgi(s) == doctest::Approx(9.0 * base));
  // Mean of RGI over k equals IRGI.
  double acc = 0.0;
  for (std::size_t k = 1; k < 5; ++k) acc += rgi(v, k);
  CHECK(acc / 4.0 == doctest::Approx(base));
  CHECK(base >= 0.0);
  CHECK_THROWS_AS(irgi(std::vector<double>{1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(rgi(v, 0), ValidationError);
}

TEST_CASE("contiguous pulse of length 8") {
  const auto m = contiguous_pulse(8, 4);
  const auto a = reception_cross_correlation(m);
  CHECK(a == std::vector<long long>{0, 1, 2, 3, 4, 3, 2, 1});
  CHECK(eargi_deterministic_exact(m) == Rational(52, 49));
  const std::vector<double> ml(a.begin(), a.end());
  const auto blind = blind_range(ml, 0.5);
  CHECK(blind == std::vector<std::size_t>{0, 1, 7});
}

TEST_CASE("time-domain and frequency-domain EARGI agree") {
  std::mt19937_64 g(5);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 3 + g() % 120;
    const auto m = random_fixed_weight_mask(n, 1 + g() % (n - 1), g());
    REQUIRE(eargi_deterministic_frequency(m) == doctest::Approx(eargi_deterministic(m)).epsilon(1e-9).scale(1.0));
    // l4 norm via naive DFT.
    if (n <= 40) REQUIRE(l4_norm4_frequency(m) == doctest::Approx(oracle::l4_norm4(oracle::bits_of(m))));
  }
}

TEST_CASE("CDS masks have zero deterministic EARGI") {
  for (const auto& m : {singer_mask(2, 2), singer_mask(3, 2), paley_mask(23), m_sequence_mask(7), gmw63_mask()})
    CHECK(eargi_deterministic_exact(m) == Rational(0));
}

TEST_CASE("payload decomposition matches the moment oracle") {
  std::mt19937_64 g(6);
  for (double mu4 : {1.0, 1.32, 2436.0 / 1764.0}) {
    for (int i = 0; i < 40; ++i) {
      const std::size_t n = 3 + g() % 40;
      const auto m = random_fixed_weight_mask(n, 1 + g() % (n - 1), g());
      REQUIRE(eargi_payload(m, mu4) == doctest::Approx(expected_irgi_oracle(oracle::bits_of(m), mu4)).epsilon(1e-10));
    }
  }
  CHECK(eargi_payload(singer_mask(2, 2), 1.32) == doctest::Approx(0.32 * (3.0 / 7.0) * (4.0 / 7.0) * 49.0 * 2.0 / 36.0));
  CHECK(eargi_payload(singer_mask(2, 2), 1.32) == doctest::Approx(0.21333).epsilon(1e-4));
}

TEST_CASE("random-mask closed form") {
  CHECK(eargi_random_mask(16, 0.5, 1.0) == doctest::Approx(14.0 / 15.0));
  CHECK(eargi_random_mask_exact(16, 0.5, 1.0) == doctest::Approx(14.0 / 15.0));
  CHECK(eargi_random_mask(16, 0.5, 1.32) > eargi_random_mask(16, 0.5, 1.0));
  CHECK_THROWS_AS(eargi_random_mask(16, 1.0, 1.0), ValidationError);
}

TEST_CASE("PSV identities") {
  std::mt19937_64 g(7);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 4 + g() % 60;
    const auto m = random_fixed_weight_mask(n, 1 + g() % (n - 1), g());
    const auto e = oracle::acf_energy(oracle::bits_of(m));
    const auto nn = static_cast<std::int64_t>(n);
    const auto w = static_cast<std::int64_t>(m.weight());
    CHECK(psv_exact(m) == Rational(e, nn * nn) - Rational(w * w, nn * nn));
    CHECK(psv_exact(m.rotated(static_cast<std::ptrdiff_t>(g() % n))) == psv_exact(m));
    CHECK(psv_exact(m) >= Rational(0));
  }
}

TEST_CASE("efficiency and throughput") {
  CHECK(energy_efficiency(0.5) == 0.25);
  CHECK(throughput(31.0 / 63.0, 4) == doctest::Approx(62.0 / 63.0));
  CHECK_THROWS_AS(throughput(0.5, 1), ValidationError);
  const auto r = glint_report(singer_mask(5, 2), 1.0, 4);
  CHECK(r.irgi == 0.0);
  CHECK(r.blind_bins == std::vector<std::size_t>{0});
  CHECK(r.throughput_bits == doctest::Approx(62.0 / 63.0));
  CHECK(to_json(r).at("eta_s").get<double>() == doctest::Approx(31.0 * 32.0 / 3969.0));
}

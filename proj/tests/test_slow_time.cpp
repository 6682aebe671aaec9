#include <doctest.h>

#include <cmath>
#include <random>

#include "masm/error.hpp"
#include "masm/families.hpp"
#include "masm/slow_time.hpp"
#include "oracles.hpp"

using namespace masm;

namespace {

// Direct moment computation of E(r_kk - mean_{p visible} r_pp)^2 with r_kk = sum_t u_t m(t)(1 - m(t+k)).
double eprgi_oracle(const oracle::Bits& m, const std::vector<std::size_t>& blind, double mu4, std::size_t k) {
  const auto n = static_cast<long long>(m.size());
  std::vector<char> is_blind(m.size(), 0);
  for (auto b : blind) is_blind[b] = 1;
  auto c = [&](long long t, long long p) { return static_cast<double>(oracle::at(m, t) * (1 - oracle::at(m, t + p))); };
  double count = 0.0;
  for (long long p = 0; p < n; ++p)
    if (!is_blind[p]) count += 1.0;
  double mean_total = 0.0;
  double var = 0.0;
  double mu_k = 0.0;
  for (long long t = 0; t < n; ++t) {
    double ct = 0.0;
    for (long long p = 0; p < n; ++p)
      if (!is_blind[p]) ct += c(t, p);
    ct /= count;
    mean_total += ct;
    mu_k += c(t, static_cast<long long>(k));
    const double d = c(t, static_cast<long long>(k)) - ct;
    var += d * d;
  }
  return (mu_k - mean_total) * (mu_k - mean_total) + (mu4 - 1.0) * var;
}

}  // namespace

TEST_CASE("expansion") {
  const auto s = expand(TransmissionMask::from_string("110"), 2);
  CHECK(s.expanded().to_string() == "111100");
  CHECK(s.slow_length() == 3);
  CHECK(s.sub_pulse() == 2);
  CHECK_THROWS_AS(expand(TransmissionMask::from_string("110"), 0), ValidationError);
  CHECK(expand(TransmissionMask::from_string("1011"), 1).expanded().to_string() == "1011");
}

TEST_CASE("piecewise-linear reception correlation") {
  std::mt19937_64 g(21);
  for (int i = 0; i < 100; ++i) {
    const std::size_t l = 3 + g() % 14;
    const std::size_t t = 1 + g() % 6;
    const auto slow = random_fixed_weight_mask(l, 1 + g() % (l - 1), g());
    const auto stm = expand(slow, t);
    const auto want = oracle::a_seq(oracle::bits_of(stm.expanded()));
    REQUIRE(interpolated_a(stm) == want);
    const auto r = slow_time_sidelobes(stm);
    const auto o = oracle::r_matrix(oracle::bits_of(stm.expanded()));
    for (std::size_t x = 0; x < l * t; ++x)
      for (std::size_t y = 0; y < l * t; ++y) REQUIRE(r(x, y) == o[x][y]);
  }
}

TEST_CASE("blind zones") {
  CHECK(blind_zone(3, 2) == std::vector<std::size_t>{0, 1, 5});
  CHECK(blind_zone(63, 16).size() == 31);
  CHECK(structural_blind_zone(10, 1) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(blind_zone(2, 4), ValidationError);
}

TEST_CASE("EPRGI matches the moment oracle") {
  std::mt19937_64 g(22);
  for (double mu4 : {1.0, 1.32}) {
    for (int i = 0; i < 30; ++i) {
      const std::size_t l = 3 + g() % 8;
      const std::size_t t = 1 + g() % 4;
      const auto stm = expand(random_fixed_weight_mask(l, 1 + g() % (l - 1), g()), t);
      const auto& m = stm.expanded();
      const auto blind = blind_zone(l, t);
      const EprgiModel model(m, blind, mu4);
      for (std::size_t k = 1; k < m.size(); ++k)
        REQUIRE(model.eprgi(k) == doctest::Approx(eprgi_oracle(oracle::bits_of(m), blind, mu4, k)).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("CDS slow masks are flat outside the blind zone") {
  const auto stm = expand(m_sequence_mask(6), 16);
  const auto blind = blind_zone(63, 16);
  const EprgiModel model(stm.expanded(), blind, 1.0);
  for (std::size_t k = 16; k <= 62 * 16; k += 16) CHECK(model.eprgi(k) == doctest::Approx(0.0).scale(1.0));
  CHECK(std::isinf(EprgiModel(contiguous_pulse(8, 4), {0}, 1.0).neprgi(0)));
  CHECK_THROWS_AS(EprgiModel(contiguous_pulse(4, 2), {0, 1, 2, 3}, 1.0), ValidationError);
}

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "masm/families.hpp"
#include "masm/glint.hpp"
#include "masm/monte_carlo.hpp"
#include "masm/response.hpp"
#include "masm/slow_time.hpp"

using namespace masm;

TEST_CASE("pairwise summation") {
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  CHECK(pairwise_sum(v) == 500500.0);
}

TEST_CASE("results do not depend on the thread count") {
  McConfig cfg;
  cfg.trials = 300;
  cfg.seed = 99;
  cfg.constellation = make_qam(16);
  const auto mask = bernoulli_mask(40, 0.4, 1);
  cfg.threads = 1;
  const auto one = estimate_irgi(cfg, mask);
  cfg.threads = 4;
  const auto four = estimate_irgi(cfg, mask);
  CHECK(one.samples == four.samples);
  CHECK(one.mean == four.mean);
  CHECK(one.std_error == four.std_error);
  cfg.threads = 3;
  CHECK(estimate_sidelobe(cfg, mask, 3, 7).samples == estimate_sidelobe(McConfig{300, 99, make_qam(16), 1}, mask, 3, 7).samples);
}

TEST_CASE("three sigma check") {
  McEstimate e{1.0, 0.1, 10, {}};
  CHECK(three_sigma_check(e, 1.25).pass);
  CHECK_FALSE(three_sigma_check(e, 1.5).pass);
  McEstimate z{0.0, 0.0, 10, {}};
  CHECK(three_sigma_check(z, 0.0).pass);
  CHECK(three_sigma_check(z, 0.0).degenerate);
  CHECK_FALSE(three_sigma_check(z, 1e-3).pass);
}

TEST_CASE("CDS mask under PSK has zero realized IRGI") {
  McConfig cfg;
  cfg.trials = 100;
  cfg.seed = 3;
  const auto est = estimate_irgi(cfg, singer_mask(2, 3));
  for (double s : est.samples) CHECK(std::abs(s) < 1e-18);
}

TEST_CASE("simulated moments agree with closed forms") {
  McConfig cfg;
  cfg.trials = 2000;
  cfg.seed = 5;
  cfg.constellation = make_qam(16);
  const auto mask = singer_mask(2, 2);
  CHECK(three_sigma_check(estimate_irgi(cfg, mask), eargi_payload(mask, 1.32)).pass);
  const auto c = contiguous_pulse(16, 6);
  CHECK(three_sigma_check(estimate_irgi(cfg, c), eargi_payload(c, 1.32)).pass);
  const auto r = expected_sidelobe_matrix(mask);
  CHECK(three_sigma_check(estimate_sidelobe(cfg, mask, 2, 5), static_cast<double>(r(2, 5))).pass);
  const auto stm = expand(m_sequence_mask(3), 3);
  const auto blind = blind_zone(7, 3);
  const EprgiModel model(stm.expanded(), blind, 1.32);
  CHECK(three_sigma_check(estimate_eprgi(cfg, stm.expanded(), blind, 4), model.eprgi(4)).pass);
}

TEST_CASE("sample export") {
  McEstimate e{0.5, 0.0, 2, {0.25, 0.75}};
  std::ostringstream os;
  write_samples_csv(os, e);
  CHECK(os.str().find("0,0.25") != std::string::npos);
}

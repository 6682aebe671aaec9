#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "masm/error.hpp"
#include "masm/families.hpp"
#include "masm/glint.hpp"
#include "masm/optimizer.hpp"
#include "masm/recipes.hpp"
#include "oracles.hpp"

using namespace masm;

namespace {

long long brute_min(std::size_t n, std::size_t w) {
  long long best = std::numeric_limits<long long>::max();
  oracle::for_each_mask(n, w, [&](const oracle::Bits& m) { best = std::min(best, oracle::acf_energy(m)); });
  return best;
}

}  // namespace

TEST_CASE("objective values") {
  CHECK(objective_exact(singer_mask(2, 2)) == Rational(15, 7));
  CHECK(objective_exact(contiguous_pulse(7, 3)) == Rational(19, 7));
  std::mt19937_64 g(31);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 3 + g() % 30;
    const auto m = random_fixed_weight_mask(n, 1 + g() % (n - 1), g());
    CHECK(objective(m) == doctest::Approx(oracle::l4_norm4(oracle::bits_of(m))));
    CHECK(acf_energy(m) == oracle::acf_energy(oracle::bits_of(m)));
  }
}

TEST_CASE("necklace counts") {
  CHECK(necklace_count(22, 11) == 32066);
  CHECK(necklace_count(7, 3) == 5);
  CHECK(necklace_count(6, 3) == 4);
}

TEST_CASE("exhaustive search matches brute force") {
  for (auto [n, w] : {std::pair<std::size_t, std::size_t>{4, 2}, {7, 3}, {11, 5}, {13, 4}, {10, 3}, {12, 6}}) {
    const auto r = exhaustive(n, w);
    CHECK(r.certificate == Certificate::global_optimum);
    CHECK(r.gap == 0.0);
    CHECK(acf_energy(r.best_mask) == brute_min(n, w));
    CHECK(r.best_mask.weight() == w);
    CHECK(canonical_rotation(r.best_mask) == r.best_mask);
  }
  CHECK(acf_energy(exhaustive(4, 2).best_mask) == 6);
  CHECK(exhaustive(4, 2).best_mask == canonical_rotation(contiguous_pulse(4, 2)));
  CHECK(acf_energy(exhaustive(15, 7).best_mask) == 175);
  CHECK_THROWS_AS(exhaustive(30, 15, 1000), BudgetExceeded);
}

TEST_CASE("N = 22 optimum") {
  const auto r = exhaustive(22, 11);
  CHECK(r.objective == Rational(701, 22));
  CHECK(r.visited == 32066);
  const auto a = reception_cross_correlation(r.best_mask);
  CHECK(bins_off_modal_level(a) == 5);
  // The same mask minimizes PSV and EARGI within its weight class.
  CHECK(psv(r.best_mask) <= psv(contiguous_pulse(22, 11)));
  CHECK(eargi_deterministic(r.best_mask) <= eargi_deterministic(contiguous_pulse(22, 11)));
}

TEST_CASE("argmin of objective, PSV and EARGI coincide at fixed weight") {
  for (auto [n, w] : {std::pair<std::size_t, std::size_t>{9, 4}, {10, 5}}) {
    long long e_min = std::numeric_limits<long long>::max();
    Rational p_min(1000000), g_min(1000000);
    std::vector<oracle::Bits> e_arg, p_arg, g_arg;
    oracle::for_each_mask(n, w, [&](const oracle::Bits& b) {
      std::vector<std::uint8_t> u(b.begin(), b.end());
      const TransmissionMask m(u);
      const auto e = acf_energy(m);
      const auto p = psv_exact(m);
      const auto g = eargi_deterministic_exact(m);
      if (e < e_min) { e_min = e; e_arg.clear(); }
      if (e == e_min) e_arg.push_back(b);
      if (p < p_min) { p_min = p; p_arg.clear(); }
      if (p == p_min) p_arg.push_back(b);
      if (g < g_min) { g_min = g; g_arg.clear(); }
      if (g == g_min) g_arg.push_back(b);
    });
    CHECK(e_arg == p_arg);
    CHECK(e_arg == g_arg);
  }
}

TEST_CASE("branch and bound agrees with exhaustive search") {
  for (auto [n, w] : {std::pair<std::size_t, std::size_t>{7, 3}, {9, 4}, {11, 5}, {12, 5}, {13, 6}, {14, 7}, {16, 8}}) {
    const auto e = exhaustive(n, w);
    const auto b = branch_and_bound(n, w);
    CHECK(b.certificate == Certificate::global_optimum);
    CHECK(b.objective == e.objective);
    REQUIRE(b.root_bound.has_value());
    CHECK(*b.root_bound <= static_cast<double>(acf_energy(e.best_mask)) + 1e-6);
  }
}

TEST_CASE("relaxation bound is a lower bound") {
  std::mt19937_64 g(32);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 6 + g() % 8;
    const std::size_t w = 2 + g() % (n - 3);
    std::vector<int> fixed(n, -1);
    fixed[0] = 1;
    const std::size_t extra = g() % 3;
    for (std::size_t j = 0; j < extra; ++j) fixed[1 + g() % (n - 1)] = static_cast<int>(g() % 2);
    long long best = std::numeric_limits<long long>::max();
    oracle::for_each_mask(n, w, [&](const oracle::Bits& b) {
      for (std::size_t j = 0; j < n; ++j)
        if (fixed[j] >= 0 && fixed[j] != b[j]) return;
      best = std::min(best, oracle::acf_energy(b));
    });
    if (best == std::numeric_limits<long long>::max()) continue;
    CHECK(relaxation_lower_bound(n, w, fixed) <= static_cast<double>(best) + 1e-6);
  }
}

TEST_CASE("local search") {
  const auto r = local_search(31, 15, 1, 4);
  CHECK(r.certificate == Certificate::heuristic);
  CHECK(std::isnan(r.gap));
  CHECK(r.best_mask.weight() == 15);
  CHECK(acf_energy(r.best_mask) <= acf_energy(contiguous_pulse(31, 15)));
  CHECK(local_search(31, 15, 1, 4).best_mask == r.best_mask);
  // A descent result admits no improving swap.
  const auto m = steepest_descent(contiguous_pulse(20, 9));
  const auto base = acf_energy(m);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) {
      if (!m[i] || m[j]) continue;
      auto bits = oracle::bits_of(m);
      bits[i] = 0;
      bits[j] = 1;
      REQUIRE(oracle::acf_energy(bits) >= base);
    }
  std::uint64_t moves = 0;
  const auto fixed_point = steepest_descent(m, &moves);
  CHECK(moves == 0);
  CHECK(fixed_point == m);
}

TEST_CASE("result JSON") {
  const auto j = to_json(exhaustive(7, 3));
  CHECK(j.at("method") == "exhaustive");
  CHECK(j.at("certificate") == "global_optimum");
  CHECK(j.at("objective_exact") == "15/7");
}

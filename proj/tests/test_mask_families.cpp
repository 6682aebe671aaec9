#include <doctest.h>

#include <cmath>

#include "masm/error.hpp"
#include "masm/families.hpp"
#include "masm/galois.hpp"
#include "oracles.hpp"

using namespace masm;

namespace {

void check_cds_identity(const CdsParams& p) { CHECK(p.k * (p.k - 1) == p.lambda * (p.nu - 1)); }

bool equivalent_to_set(const TransmissionMask& m, std::size_t n, std::vector<std::size_t> set) {
  return cyclic_decimation_equivalent(m, TransmissionMask::from_support(n, set));
}

}  // namespace

TEST_CASE("contiguous pulse") {
  CHECK(contiguous_pulse(4, 2).to_string() == "1100");
  CHECK(contiguous_pulse(22, 11).to_string() == std::string(11, '1') + std::string(11, '0'));
  CHECK(periodic_acf(contiguous_pulse(8, 4)) == std::vector<long long>{4, 3, 2, 1, 0, 1, 2, 3});
  CHECK_THROWS_AS(contiguous_pulse(8, 0), ValidationError);
  CHECK_THROWS_AS(contiguous_pulse(8, 8), ValidationError);
}

TEST_CASE("Bernoulli masks are deterministic and concentrated") {
  CHECK(bernoulli_mask(64, 0.3, 5) == bernoulli_mask(64, 0.3, 5));
  CHECK_FALSE(bernoulli_mask(64, 0.3, 5) == bernoulli_mask(64, 0.3, 6));
  const auto big = bernoulli_mask(10000, 0.5, 1);
  CHECK(std::abs(static_cast<double>(big.weight()) - 5000.0) <= 3.0 * std::sqrt(10000 * 0.25));
  CHECK_THROWS_AS(bernoulli_mask(10, 0.0, 1), ValidationError);
  CHECK_THROWS_AS(bernoulli_mask(3, 1e-9, 1), ValidationError);
}

TEST_CASE("stored LFSR polynomials are primitive") {
  for (unsigned d = 2; d <= 16; ++d) {
    const std::uint32_t poly = m_sequence_polynomial(d);
    std::uint32_t x = 1;
    std::uint32_t period = 0;
    const std::uint32_t full = (1U << d) - 1;
    for (std::uint32_t i = 1; i <= full; ++i) {
      x <<= 1;
      if ((x >> d) & 1U) x ^= poly;
      if (x == 1) {
        period = i;
        break;
      }
    }
    CHECK_MESSAGE(period == full, "degree " << d);
  }
  CHECK_THROWS_AS(m_sequence_mask(1), ValidationError);
  CHECK_THROWS_AS(m_sequence_mask(17), ValidationError);
}

TEST_CASE("m-sequence masks") {
  const auto m3 = m_sequence_mask(3);
  CHECK(m3.size() == 7);
  CHECK(equivalent_to_set(m3, 7, {0, 1, 3}));
  const auto m6 = m_sequence_mask(6);
  CHECK(m6.size() == 63);
  CHECK(m6.weight() == 31);
  CHECK(m_sequence_mask(6, true).weight() == 32);
  for (unsigned d = 2; d <= 12; ++d) {
    const auto m = m_sequence_mask(d);
    const auto y = to_plus_minus(m);
    const std::size_t n = m.size();
    const auto bits = oracle::bits_of(m);
    const auto acf = oracle::acf(bits);
    for (std::size_t k = 1; k < n; ++k) {
      // +-1 ACF via the affine relation on the brute-force 0/1 ACF.
      const long long ry = static_cast<long long>(n) - 4 * static_cast<long long>(m.weight()) + 4 * acf[k];
      REQUIRE(ry == -1);
    }
    const auto c = certify_cds(m);
    REQUIRE(c.has_value());
    if (d >= 2) CHECK(c->lambda == (std::size_t{1} << (d - 2)) - 1);
    check_cds_identity(*c);
  }
}

TEST_CASE("Paley masks") {
  const auto p7 = paley_mask(7);
  CHECK(p7.support() == std::vector<std::size_t>{1, 2, 4});
  CHECK(equivalent_to_set(p7, 7, {0, 1, 3}));
  const auto c11 = certify_cds(paley_mask(11));
  REQUIRE(c11);
  CHECK(*c11 == CdsParams{11, 5, 2});
  const auto p23 = paley_mask(23);
  CHECK(p23.weight() == 11);
  CHECK(*certify_cds(p23) == CdsParams{23, 11, 5});
  const auto inter = oracle::translate_intersections(p23.support(), 23);
  for (std::size_t w = 1; w < 23; ++w) CHECK(inter[w] == 5);
  CHECK_THROWS_AS(paley_mask(13), ValidationError);
  CHECK_THROWS_AS(paley_mask(15), ValidationError);
}

TEST_CASE("Galois field arithmetic") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {2, 4}, {3, 3}, {5, 2}, {7, 2}, {2, 10}}) {
    const GaloisField f(p, m);
    const std::uint32_t q = f.order();
    // alpha generates every nonzero element exactly once.
    std::vector<int> seen(q, 0);
    for (std::uint32_t i = 0; i + 1 < q; ++i) ++seen[f.exp(i)];
    CHECK(seen[0] == 0);
    CHECK(std::all_of(seen.begin() + 1, seen.end(), [](int v) { return v == 1; }));
    // Distributivity and Frobenius on a sample.
    for (std::uint32_t a = 0; a < std::min<std::uint32_t>(q, 40); ++a) {
      for (std::uint32_t b = 0; b < std::min<std::uint32_t>(q, 40); ++b) {
        const std::uint32_t c = (a * 7 + b * 3) % q;
        REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        REQUIRE(f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p)));
      }
      // Absolute trace lies in the prime field.
      REQUIRE(f.trace(a, 1) < p);
    }
  }
  CHECK_THROWS_AS(GaloisField(4, 2), ValidationError);
  CHECK_THROWS_AS(GaloisField(2, 21), ValidationError);
  CHECK(as_prime_power(9)->p == 3);
  CHECK(as_prime_power(9)->exponent == 2);
  CHECK_FALSE(as_prime_power(12).has_value());
}

TEST_CASE("Singer masks") {
  struct Case {
    unsigned n;
    std::uint64_t q;
    std::size_t nu;
    std::size_t k;
    std::size_t lambda;
  };
  for (const auto c : {Case{2, 2, 7, 3, 1}, Case{2, 3, 13, 4, 1}, Case{3, 2, 15, 7, 3}, Case{3, 3, 40, 13, 4},
                       Case{5, 2, 63, 31, 15}, Case{2, 4, 21, 5, 1}, Case{2, 5, 31, 6, 1}, Case{3, 4, 85, 21, 5},
                       Case{7, 2, 255, 127, 63}, Case{2, 9, 91, 10, 1}}) {
    const auto m = singer_mask(c.n, c.q);
    CHECK(m.size() == c.nu);
    const auto p = certify_cds(m);
    REQUIRE(p);
    CHECK(*p == CdsParams{c.nu, c.k, c.lambda});
    check_cds_identity(*p);
    CHECK(oracle::is_cds(oracle::bits_of(m)));
  }
  CHECK(equivalent_to_set(singer_mask(2, 2), 7, {0, 1, 3}));
  CHECK(equivalent_to_set(singer_mask(3, 3), 40, {0, 1, 2, 4, 5, 8, 13, 14, 17, 19, 24, 26, 34}));
  CHECK_THROWS_AS(singer_mask(2, 6), ValidationError);
  CHECK_THROWS_AS(singer_mask(1, 2), ValidationError);
  CHECK_THROWS_AS(singer_mask(20, 2), ValidationError);
}

TEST_CASE("known difference-set table") {
  CHECK(known_cds_table(13, 4)->support() == std::vector<std::size_t>{0, 1, 4, 6});
  CHECK(known_cds_table(15, 7)->support() == std::vector<std::size_t>{0, 1, 2, 7, 9, 12, 13});
  CHECK_FALSE(known_cds_table(12, 5).has_value());
  for (const auto& e : cds_table()) {
    const auto inter = oracle::translate_intersections(e.set, e.nu);
    for (std::size_t w = 1; w < e.nu; ++w) REQUIRE(inter[w] == static_cast<long long>(e.params.lambda));
    check_cds_identity(e.params);
  }
  const auto gmw = gmw63_mask();
  CHECK(*certify_cds(gmw) == CdsParams{63, 31, 15});
}

TEST_CASE("stagger masks") {
  const auto plans = reference_stagger_plans();
  const std::vector<std::pair<std::size_t, std::string>> expected = {{1056, "0.500"}, {1243, "0.496"}, {1140, "0.491"}};
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const auto m = stagger_mask(plans[i]);
    CHECK(m.size() == expected[i].first);
    CHECK(m.size() == plans[i].total_length());
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.3f", m.duty_cycle());
    CHECK(std::string(buf) == expected[i].second);
  }
  CHECK(stagger_mask({{1}, 1, 3, 8}) == contiguous_pulse(8, 3));
  CHECK_THROWS_AS(stagger_mask({{31, 32}, 1, 31, 1}), ValidationError);
  const auto plan = stagger_plan_from_json(nlohmann::json::parse(R"({"ratios":[3,4],"periods_per_prf":2,"pulse_width":1})"));
  CHECK(stagger_mask(plan).to_string() == "10010001001000");
  CHECK_THROWS_AS(stagger_plan_from_json(nlohmann::json::parse(R"({"ratios":[3,4]})")), ValidationError);
}

TEST_CASE("CDS certification") {
  CHECK(*certify_cds(TransmissionMask::from_string("1101000")) == CdsParams{7, 3, 1});
  CHECK_FALSE(certify_cds(contiguous_pulse(8, 4)).has_value());
}

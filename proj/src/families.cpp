#include "masm/families.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "cds_table_data.hpp"
#include "masm/error.hpp"
#include "masm/galois.hpp"
#include "masm/rng.hpp"

namespace masm {
namespace {

constexpr int kBernoulliRetries = 64;
constexpr std::uint64_t kMaxSingerFieldOrder = std::uint64_t{1} << 20;

// x^d + lower terms, bit j = coefficient of x^j.
constexpr std::array<std::uint32_t, 17> kPrimitivePolynomials = {
    0,
    0,
    (1U << 2) | (1U << 1) | 1U,
    (1U << 3) | (1U << 1) | 1U,
    (1U << 4) | (1U << 1) | 1U,
    (1U << 5) | (1U << 2) | 1U,
    (1U << 6) | (1U << 1) | 1U,
    (1U << 7) | (1U << 1) | 1U,
    (1U << 8) | (1U << 4) | (1U << 3) | (1U << 2) | 1U,
    (1U << 9) | (1U << 4) | 1U,
    (1U << 10) | (1U << 3) | 1U,
    (1U << 11) | (1U << 2) | 1U,
    (1U << 12) | (1U << 6) | (1U << 4) | (1U << 1) | 1U,
    (1U << 13) | (1U << 4) | (1U << 3) | (1U << 1) | 1U,
    (1U << 14) | (1U << 10) | (1U << 6) | (1U << 1) | 1U,
    (1U << 15) | (1U << 1) | 1U,
    (1U << 16) | (1U << 12) | (1U << 3) | (1U << 1) | 1U,
};

std::vector<CdsTableEntry> load_cds_table() {
  const auto doc = nlohmann::json::parse(kCdsTableJson);
  std::vector<CdsTableEntry> out;
  for (const auto& row : doc) {
    const auto nu = row.at("nu").get<std::size_t>();
    auto set = row.at("set").get<std::vector<std::size_t>>();
    const auto label = row.at("label").get<std::string>();
    auto mask = TransmissionMask::from_support(nu, set);
    const auto params = certify_cds(mask);
    if (!params) throw std::logic_error("stored difference set '" + label + "' fails certification");
    out.push_back({nu, std::move(set), label, std::move(mask), *params});
  }
  return out;
}

}  // namespace

std::size_t StaggerPlan::total_length() const {
  const std::size_t sum = std::accumulate(ratios.begin(), ratios.end(), std::size_t{0});
  return periods_per_prf * sum * pri_quantum;
}

TransmissionMask contiguous_pulse(std::size_t n, std::size_t weight) {
  if (weight == 0 || weight >= n)
    throw ValidationError("contiguous pulse needs 0 < weight < N (weight " + std::to_string(weight) +
                          ", N " + std::to_string(n) + ")");
  std::vector<std::uint8_t> bits(n, 0);
  std::fill_n(bits.begin(), weight, 1);
  return TransmissionMask(bits);
}

TransmissionMask bernoulli_mask(std::size_t n, double rho, std::uint64_t seed) {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("Bernoulli duty cycle must lie in (0, 1)");
  if (n < 3) throw ValidationError("mask length must be at least 3");
  for (int attempt = 0; attempt < kBernoulliRetries; ++attempt) {
    auto engine = stream_engine(seed, static_cast<std::uint64_t>(attempt));
    std::vector<std::uint8_t> bits(n);
    std::size_t w = 0;
    for (auto& b : bits) {
      b = uniform_unit(engine) < rho ? 1 : 0;
      w += b;
    }
    if (w > 0 && w < n) return TransmissionMask(bits);
  }
  throw ValidationError("Bernoulli mask degenerate after " + std::to_string(kBernoulliRetries) +
                        " draws (N " + std::to_string(n) + ", rho " + std::to_string(rho) + ")");
}

TransmissionMask random_fixed_weight_mask(std::size_t n, std::size_t weight, std::uint64_t seed, std::uint64_t stream) {
  if (weight == 0 || weight >= n) throw ValidationError("random mask needs 0 < weight < N");
  auto engine = stream_engine(seed, stream);
  std::vector<std::uint8_t> bits(n, 0);
  std::fill_n(bits.begin(), weight, 1);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(bits[i], bits[uniform_index(engine, i + 1)]);
  return TransmissionMask(bits);
}

std::uint32_t m_sequence_polynomial(unsigned degree) {
  if (degree < 2 || degree > 16)
    throw ValidationError("m-sequence degree must be in [2, 16], got " + std::to_string(degree));
  return kPrimitivePolynomials[degree];
}

TransmissionMask m_sequence_mask(unsigned degree, bool complement) {
  const std::uint32_t poly = m_sequence_polynomial(degree);
  const std::size_t n = (std::size_t{1} << degree) - 1;
  // Recurrence s[t + d] = sum_{j<d} c_j s[t + j], seeded with 0...01.
  std::vector<std::uint8_t> s(n + degree, 0);
  s[degree - 1] = 1;
  for (std::size_t t = 0; t + degree < s.size(); ++t) {
    std::uint8_t v = 0;
    for (unsigned j = 0; j < degree; ++j)
      if ((poly >> j) & 1U) v ^= s[t + j];
    s[t + degree] = v;
  }
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = complement ? s[i] : static_cast<std::uint8_t>(s[i] ^ 1U);
  return TransmissionMask(bits);
}

TransmissionMask paley_mask(std::size_t p) {
  if (!is_prime(p) || p % 4 != 3)
    throw ValidationError("Paley mask needs a prime p = 3 (mod 4), got " + std::to_string(p));
  std::vector<std::uint8_t> bits(p, 0);
  for (std::size_t x = 1; x < p; ++x) bits[(x * x) % p] = 1;
  return TransmissionMask(bits);
}

TransmissionMask singer_mask(unsigned n, std::uint64_t q) {
  if (n < 2) throw ValidationError("Singer construction needs n >= 2");
  const auto pp = as_prime_power(q);
  if (!pp) throw ValidationError("Singer q must be a prime power, got " + std::to_string(q));
  std::uint64_t field_order = 1;
  for (unsigned i = 0; i <= n; ++i) {
    field_order *= q;
    if (field_order > kMaxSingerFieldOrder)
      throw ValidationError("Singer field q^(n+1) exceeds 2^20 (q " + std::to_string(q) + ", n " +
                            std::to_string(n) + ")");
  }
  const GaloisField field(static_cast<std::uint32_t>(pp->p), pp->exponent * (n + 1));
  const std::size_t len = static_cast<std::size_t>((field_order - 1) / (q - 1));
  std::vector<std::uint8_t> bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = field.trace(field.exp(i), pp->exponent) == 0 ? 1 : 0;
  TransmissionMask mask(bits);

  const auto params = certify_cds(mask);
  std::uint64_t qn1 = 1;
  for (unsigned i = 0; i + 1 < n; ++i) qn1 *= q;
  const std::size_t expected_lambda = static_cast<std::size_t>((qn1 - 1) / (q - 1));
  if (!params || params->lambda != expected_lambda)
    throw std::logic_error("Singer construction failed certification for PG(" + std::to_string(n) + "," +
                           std::to_string(q) + ")");
  return mask;
}

const std::vector<CdsTableEntry>& cds_table() {
  static const std::vector<CdsTableEntry> table = load_cds_table();
  return table;
}

std::optional<TransmissionMask> known_cds_table(std::size_t n, std::size_t weight) {
  for (const auto& e : cds_table())
    if (e.nu == n && e.set.size() == weight) return e.mask;
  return std::nullopt;
}

TransmissionMask gmw63_mask() {
  for (const auto& e : cds_table())
    if (e.label == "GMW") return e.mask;
  throw std::logic_error("GMW entry missing from the difference-set table");
}

TransmissionMask stagger_mask(const StaggerPlan& plan) {
  if (plan.ratios.empty()) throw ValidationError("stagger plan has no ratios");
  if (plan.periods_per_prf == 0) throw ValidationError("stagger periods_per_prf must be positive");
  if (plan.pulse_width == 0) throw ValidationError("stagger pulse_width must be positive");
  if (plan.pri_quantum == 0) throw ValidationError("stagger pri_quantum must be positive");
  const std::size_t min_ratio = *std::min_element(plan.ratios.begin(), plan.ratios.end());
  if (min_ratio == 0) throw ValidationError("stagger ratios must be positive");
  if (plan.pulse_width >= min_ratio * plan.pri_quantum)
    throw ValidationError("stagger pulse_width " + std::to_string(plan.pulse_width) +
                          " must be shorter than the shortest PRI " + std::to_string(min_ratio * plan.pri_quantum));
  std::vector<std::uint8_t> bits;
  bits.reserve(plan.total_length());
  for (std::size_t rep = 0; rep < plan.periods_per_prf; ++rep) {
    for (std::size_t r : plan.ratios) {
      const std::size_t pri = r * plan.pri_quantum;
      bits.insert(bits.end(), plan.pulse_width, 1);
      bits.insert(bits.end(), pri - plan.pulse_width, 0);
    }
  }
  return TransmissionMask(bits);
}

StaggerPlan stagger_plan_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("stagger plan JSON: expected an object");
  StaggerPlan plan;
  try {
    plan.ratios = j.at("ratios").get<std::vector<std::size_t>>();
    plan.periods_per_prf = j.at("periods_per_prf").get<std::size_t>();
    plan.pulse_width = j.at("pulse_width").get<std::size_t>();
    plan.pri_quantum = j.value("pri_quantum", std::size_t{1});
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("stagger plan JSON: ") + e.what());
  }
  return plan;
}

std::vector<StaggerPlan> reference_stagger_plans() {
  return {
      {{31, 32, 33}, 11, 16, 1},
      {{25, 30, 27, 31}, 11, 14, 1},
      {{51, 62, 53, 61, 58}, 4, 28, 1},
  };
}

std::optional<CdsParams> certify_cds(const TransmissionMask& mask) {
  const auto acf = periodic_acf(mask);
  const long long level = acf[1];
  for (std::size_t k = 2; k < acf.size(); ++k)
    if (acf[k] != level) return std::nullopt;
  return CdsParams{mask.size(), mask.weight(), static_cast<std::size_t>(level)};
}

bool cyclic_decimation_equivalent(const TransmissionMask& a, const TransmissionMask& b) {
  if (a.size() != b.size() || a.weight() != b.weight()) return false;
  const std::size_t n = a.size();
  const auto target = canonical_rotation(b);
  const auto support = a.support();
  std::vector<std::size_t> image(support.size());
  for (std::size_t t = 1; t < n; ++t) {
    if (std::gcd(t, n) != 1) continue;
    for (std::size_t i = 0; i < support.size(); ++i) image[i] = (support[i] * t) % n;
    if (canonical_rotation(TransmissionMask::from_support(n, image)) == target) return true;
  }
  return false;
}

}  // namespace masm

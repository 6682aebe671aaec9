#include "masm/constellation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>

#include "masm/error.hpp"
#include "masm/rng.hpp"

namespace masm {
namespace {

constexpr double kAssumptionTolerance = 1e-12;

double fourth_moment(const std::vector<cplx>& pts) {
  double s = 0.0;
  for (const auto& x : pts) s += std::norm(x) * std::norm(x);
  return s / static_cast<double>(pts.size());
}

void check_assumptions(const std::string& name, const std::vector<cplx>& pts) {
  if (pts.size() < 2) throw ValidationError("constellation '" + name + "' needs at least 2 points");
  cplx mean{0.0, 0.0};
  cplx pseudo{0.0, 0.0};
  double power = 0.0;
  for (const auto& x : pts) {
    mean += x;
    pseudo += x * x;
    power += std::norm(x);
  }
  const double n = static_cast<double>(pts.size());
  mean /= n;
  pseudo /= n;
  power /= n;
  if (std::abs(power - 1.0) > kAssumptionTolerance)
    throw ValidationError("constellation '" + name + "' violates unit power (Assumption 1): E|x|^2 = " +
                          std::to_string(power));
  if (std::abs(mean) > kAssumptionTolerance)
    throw ValidationError("constellation '" + name + "' violates zero mean (Assumption 2)");
  if (std::abs(pseudo) > kAssumptionTolerance)
    throw ValidationError("constellation '" + name + "' violates zero pseudo-variance (Assumption 2)");
}

std::size_t integer_sqrt(std::size_t m) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m))));
  return r * r == m ? r : 0;
}

}  // namespace

Constellation::Constellation(std::string name, std::vector<cplx> points)
    : name_(std::move(name)), points_(std::move(points)) {
  check_assumptions(name_, points_);
  mu4_ = fourth_moment(points_);
}

Constellation::Constellation(std::string name, std::vector<cplx> points, double mu4)
    : name_(std::move(name)), points_(std::move(points)), mu4_(mu4) {
  check_assumptions(name_, points_);
}

bool Constellation::constant_modulus() const noexcept {
  double lo = std::abs(points_.front());
  double hi = lo;
  for (const auto& x : points_) {
    lo = std::min(lo, std::abs(x));
    hi = std::max(hi, std::abs(x));
  }
  return hi - lo < kAssumptionTolerance;
}

Constellation make_psk(std::size_t m) {
  // BPSK has pseudo-variance 1.
  if (m < 3) throw ValidationError("PSK order must be at least 3 (BPSK has nonzero pseudo-variance)");
  std::vector<cplx> pts(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
    pts[i] = std::polar(1.0, phase);
  }
  return Constellation(m == 4 ? "qpsk" : std::to_string(m) + "psk", std::move(pts));
}

boost::rational<std::int64_t> qam_mu4_exact(std::size_t m) {
  const std::size_t side = integer_sqrt(m);
  if (side < 2 || (side & (side - 1)) != 0)
    throw ValidationError("QAM order must be 4, 16, 64 or 256, got " + std::to_string(m));
  std::int64_t energy = 0;
  std::int64_t fourth = 0;
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      const auto a = static_cast<std::int64_t>(2 * i) - static_cast<std::int64_t>(side - 1);
      const auto b = static_cast<std::int64_t>(2 * j) - static_cast<std::int64_t>(side - 1);
      energy += a * a + b * b;
      fourth += (a * a + b * b) * (a * a + b * b);
    }
  }
  const auto count = static_cast<std::int64_t>(m);
  // E|x|^4 / (E|x|^2)^2 = count * fourth / energy^2
  return boost::rational<std::int64_t>(count * fourth, energy * energy);
}

Constellation make_qam(std::size_t m) {
  const std::size_t side = integer_sqrt(m);
  if (side < 2 || (side & (side - 1)) != 0 || m > 256)
    throw ValidationError("QAM order must be 4, 16, 64 or 256, got " + std::to_string(m));
  // Average energy of the odd-integer grid is 2 (M - 1) / 3.
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(m - 1) / 3.0);
  std::vector<cplx> pts;
  pts.reserve(m);
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      const double a = 2.0 * static_cast<double>(i) - static_cast<double>(side - 1);
      const double b = 2.0 * static_cast<double>(j) - static_cast<double>(side - 1);
      pts.emplace_back(a * scale, b * scale);
    }
  }
  return Constellation(std::to_string(m) + "qam", std::move(pts), boost::rational_cast<double>(qam_mu4_exact(m)));
}

Constellation constellation_by_name(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "qpsk") return make_psk(4);
  auto parse_order = [&](const std::string& digits) -> std::size_t {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw ValidationError("unknown constellation '" + name + "'");
    return static_cast<std::size_t>(std::stoul(digits));
  };
  for (const std::string kind : {"psk", "qam"}) {
    if (s.size() > kind.size() && s.ends_with(kind)) {
      const auto m = parse_order(s.substr(0, s.size() - kind.size()));
      return kind == "psk" ? make_psk(m) : make_qam(m);
    }
    if (s.size() > kind.size() && s.starts_with(kind)) {
      const auto m = parse_order(s.substr(kind.size()));
      return kind == "psk" ? make_psk(m) : make_qam(m);
    }
  }
  throw ValidationError("unknown constellation '" + name + "'");
}

Constellation constellation_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw ValidationError("constellation JSON: expected {name, points: [[re, im], ...]}");
  std::vector<cplx> pts;
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw ValidationError("constellation JSON: each point must be [re, im]");
    pts.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return Constellation(j.value("name", std::string("custom")), std::move(pts));
}

Constellation read_constellation_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open constellation file " + path.string());
  try {
    return constellation_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("constellation file " + path.string() + ": " + e.what());
  }
}

std::vector<cplx> sample_symbols(const Constellation& c, std::size_t count, std::uint64_t seed) {
  auto engine = stream_engine(seed, 0);
  std::vector<cplx> out(count);
  const auto& pts = c.points();
  for (auto& x : out) x = pts[uniform_index(engine, pts.size())];
  return out;
}

}  // namespace masm

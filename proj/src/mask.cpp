#include "masm/mask.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "masm/error.hpp"
#include "masm/fft.hpp"

namespace masm {
namespace {

constexpr std::size_t kDirectAcfLimit = 64;
constexpr double kRoundingTolerance = 1e-6;

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto sn = static_cast<std::ptrdiff_t>(n);
  const std::ptrdiff_t r = i % sn;
  return static_cast<std::size_t>(r < 0 ? r + sn : r);
}

}  // namespace

TransmissionMask::TransmissionMask(std::span<const std::uint8_t> bits)
    : n_(bits.size()), words_(word_count(bits.size()), 0) {
  if (n_ < 3) throw ValidationError("mask length must be at least 3, got " + std::to_string(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    if (bits[i] > 1) throw ValidationError("mask entry " + std::to_string(i) + " is not 0 or 1");
    if (bits[i]) {
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
      ++weight_;
    }
  }
  if (weight_ == 0 || weight_ == n_) {
    throw ValidationError("mask weight must satisfy 0 < weight < N (got weight " +
                          std::to_string(weight_) + ", N " + std::to_string(n_) + ")");
  }
}

TransmissionMask TransmissionMask::from_string(std::string_view bits) {
  std::vector<std::uint8_t> v;
  v.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw ValidationError(std::string("mask string contains '") + c + "'");
    v.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return TransmissionMask(v);
}

TransmissionMask TransmissionMask::from_support(std::size_t n, std::span<const std::size_t> support) {
  std::vector<std::uint8_t> v(n, 0);
  for (std::size_t i : support) {
    if (i >= n) throw ValidationError("support index " + std::to_string(i) + " out of range");
    if (v[i]) throw ValidationError("duplicate support index " + std::to_string(i));
    v[i] = 1;
  }
  return TransmissionMask(v);
}

bool TransmissionMask::cyclic(std::ptrdiff_t i) const noexcept { return (*this)[wrap(i, n_)]; }

std::vector<std::uint8_t> TransmissionMask::bits() const {
  std::vector<std::uint8_t> v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = (*this)[i];
  return v;
}

std::vector<std::size_t> TransmissionMask::support() const {
  std::vector<std::size_t> s;
  s.reserve(weight_);
  for (std::size_t i = 0; i < n_; ++i)
    if ((*this)[i]) s.push_back(i);
  return s;
}

std::string TransmissionMask::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if ((*this)[i]) s[i] = '1';
  return s;
}

TransmissionMask TransmissionMask::rotated(std::size_t shift) const {
  std::vector<std::uint8_t> v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[(i + shift) % n_] = (*this)[i];
  return TransmissionMask(v);
}

TransmissionMask TransmissionMask::complemented() const {
  auto v = bits();
  for (auto& b : v) b ^= 1U;
  return TransmissionMask(v);
}

ShiftTable::ShiftTable(const TransmissionMask& mask)
    : n_(mask.size()), stride_(word_count(mask.size())), data_(n_ * stride_, 0), reception_(stride_, 0) {
  for (std::size_t k = 0; k < n_; ++k) {
    std::uint64_t* row = data_.data() + k * stride_;
    for (std::size_t n = 0; n < n_; ++n) {
      const std::size_t src = n >= k ? n - k : n + n_ - k;
      if (mask[src]) row[n >> 6] |= std::uint64_t{1} << (n & 63);
    }
  }
  for (std::size_t n = 0; n < n_; ++n)
    if (!mask[n]) reception_[n >> 6] |= std::uint64_t{1} << (n & 63);
}

std::vector<long long> periodic_acf_direct(const TransmissionMask& mask) {
  const std::size_t n = mask.size();
  const auto support = mask.support();
  std::vector<long long> acf(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    long long s = 0;
    for (std::size_t i : support) s += mask[(i + n - k) % n];
    acf[k] = s;
  }
  return acf;
}

std::vector<long long> periodic_acf(const TransmissionMask& mask) {
  const std::size_t n = mask.size();
  if (n < kDirectAcfLimit) return periodic_acf_direct(mask);

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = mask[i] ? 1.0 : 0.0;
  const auto c = fft::cyclic_cross_correlation(x, x);
  std::vector<long long> acf(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = std::nearbyint(c[k]);
    if (std::abs(c[k] - r) >= kRoundingTolerance) {
      throw std::runtime_error("periodic_acf: FFT residual exceeds tolerance at lag " + std::to_string(k));
    }
    acf[k] = static_cast<long long>(r);
  }
  return acf;
}

IntMatrix triple_overlap_matrix(const TransmissionMask& mask) {
  const ShiftTable shifts(mask);
  const std::size_t n = mask.size();
  const std::size_t stride = shifts.words_per_row();
  const auto recv = shifts.reception();
  IntMatrix out(n, n, 0);
  std::vector<std::uint64_t> rk(stride);
  for (std::size_t k = 1; k < n; ++k) {
    const auto row_k = shifts.row(k);
    for (std::size_t w = 0; w < stride; ++w) rk[w] = row_k[w] & recv[w];
    for (std::size_t l = k; l < n; ++l) {
      const auto row_l = shifts.row(l);
      long long count = 0;
      for (std::size_t w = 0; w < stride; ++w) count += std::popcount(rk[w] & row_l[w]);
      out(k, l) = count;
      out(l, k) = count;
    }
  }
  return out;
}

std::vector<long long> reception_cross_correlation(const TransmissionMask& mask) {
  auto acf = periodic_acf(mask);
  const auto w = static_cast<long long>(mask.weight());
  for (auto& v : acf) v = w - v;
  return acf;
}

MaskCorrelations mask_cross_correlation(const TransmissionMask& mask) {
  const std::size_t n = mask.size();
  MaskCorrelations out;
  out.acf = periodic_acf(mask);
  out.a.resize(n);
  const auto w = static_cast<long long>(mask.weight());
  for (std::size_t k = 0; k < n; ++k) out.a[k] = w - out.acf[k];

  // b(l, p) is the overlap between shifts l and l - p.
  const IntMatrix overlap = triple_overlap_matrix(mask);
  out.b = IntMatrix(n, n, 0);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t p = 0; p < n; ++p) out.b(l, p) = overlap(l, (l + n - p) % n);
  return out;
}

std::vector<int> to_plus_minus(const TransmissionMask& mask) {
  std::vector<int> y(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) y[i] = mask[i] ? -1 : 1;
  return y;
}

bool acf_relation_check(const TransmissionMask& mask) {
  const std::size_t n = mask.size();
  const auto y = to_plus_minus(mask);
  const auto rx = periodic_acf(mask);
  const auto nn = static_cast<long long>(n);
  const auto w = static_cast<long long>(mask.weight());
  for (std::size_t k = 0; k < n; ++k) {
    long long ry = 0;
    for (std::size_t i = 0; i < n; ++i) ry += y[i] * y[(i + n - k) % n];
    // N (1 - 4 rho) = N - 4 w
    if (ry != nn - 4 * w + 4 * rx[k]) return false;
  }
  return true;
}

TransmissionMask canonical_rotation(const TransmissionMask& mask) {
  const std::string s = mask.to_string();
  const std::size_t n = s.size();
  // Booth's least rotation.
  const std::string ss = s + s;
  std::vector<std::ptrdiff_t> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const char sj = ss[j];
    std::ptrdiff_t i = f[j - k - 1];
    while (i != -1 && sj != ss[k + static_cast<std::size_t>(i) + 1]) {
      if (sj < ss[k + static_cast<std::size_t>(i) + 1]) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (sj != ss[k + static_cast<std::size_t>(i) + 1]) {  // i == -1
      if (sj < ss[k]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return TransmissionMask::from_string(ss.substr(k, n));
}

nlohmann::json mask_to_json(const TransmissionMask& mask) {
  return nlohmann::json{{"n", mask.size()}, {"bits", mask.to_string()}};
}

TransmissionMask mask_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("mask JSON: expected an object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ValidationError("mask JSON: field 'n' missing or not an integer");
  if (!j.contains("bits") || !j["bits"].is_string())
    throw ValidationError("mask JSON: field 'bits' missing or not a string");
  const auto n = j["n"].get<long long>();
  const auto bits = j["bits"].get<std::string>();
  if (n < 0 || static_cast<std::size_t>(n) != bits.size()) {
    throw ValidationError("mask JSON: field 'bits' has length " + std::to_string(bits.size()) +
                          " but 'n' is " + std::to_string(n));
  }
  return TransmissionMask::from_string(bits);
}

TransmissionMask read_mask_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open mask file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("mask file " + path.string() + ": " + e.what());
  }
  return mask_from_json(j);
}

}  // namespace masm

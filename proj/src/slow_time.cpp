#include "masm/slow_time.hpp"

#include <algorithm>
#include <limits>

#include "masm/error.hpp"
#include "masm/response.hpp"

namespace masm {
namespace {

TransmissionMask kron_expand(const TransmissionMask& slow, std::size_t t) {
  if (t == 0) throw ValidationError("sub-pulse length T must be positive");
  std::vector<std::uint8_t> bits;
  bits.reserve(slow.size() * t);
  for (std::size_t i = 0; i < slow.size(); ++i) bits.insert(bits.end(), t, slow[i] ? 1 : 0);
  return TransmissionMask(bits);
}

}  // namespace

SlowTimeMask::SlowTimeMask(TransmissionMask slow, std::size_t t)
    : slow_(std::move(slow)), t_(t), expanded_(kron_expand(slow_, t)) {}

SlowTimeMask expand(const TransmissionMask& slow_bits, std::size_t t) { return SlowTimeMask(slow_bits, t); }

std::vector<long long> interpolated_a(const SlowTimeMask& stm) {
  const auto slow_a = reception_cross_correlation(stm.slow());
  const std::size_t l_len = stm.slow_length();
  const std::size_t t = stm.sub_pulse();
  std::vector<long long> a(l_len * t);
  for (std::size_t k = 0; k < l_len; ++k) {
    const long long d = slow_a[(k + 1) % l_len] - slow_a[k];
    for (std::size_t l = 0; l < t; ++l)
      a[k * t + l] = static_cast<long long>(t) * slow_a[k] + static_cast<long long>(l) * d;
  }
  return a;
}

std::vector<std::size_t> structural_blind_zone(std::size_t n, std::size_t width) {
  if (width == 0 || width > n) throw ValidationError("blind-zone width must lie in 1..N");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < width; ++k) out.push_back(k);
  for (std::size_t k = n - width + 1; k < n; ++k) out.push_back(k);
  return out;
}

std::vector<std::size_t> blind_zone(std::size_t l, std::size_t t) {
  if (l < 3 || t == 0) throw ValidationError("blind zone needs L >= 3 and T >= 1");
  return structural_blind_zone(l * t, t);
}

EprgiModel::EprgiModel(const TransmissionMask& mask, std::vector<std::size_t> blind, double mu4)
    : a_(reception_cross_correlation(mask)), blind_(std::move(blind)), blind_flag_(mask.size(), 0), mu4_(mu4) {
  const std::size_t n = mask.size();
  for (std::size_t k : blind_) {
    if (k >= n) throw ValidationError("blind bin " + std::to_string(k) + " outside 0..N-1");
    blind_flag_[k] = 1;
  }
  std::vector<std::size_t> visible;
  for (std::size_t k = 0; k < n; ++k)
    if (!blind_flag_[k]) visible.push_back(k);
  if (visible.empty()) throw ValidationError("blind set covers every bin");
  m_ = static_cast<double>(visible.size());

  long long sum_a = 0;
  for (std::size_t p : visible) sum_a += a_[p];
  mean_a_ = static_cast<double>(sum_a) / m_;

  // b(k, q) = R(k, k - q)
  const IntMatrix r = expected_sidelobe_matrix(mask);
  row_sums_.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    long long s = 0;
    for (std::size_t q : visible) s += r(k, (k + n - q) % n);
    row_sums_[k] = s;
  }
  long long sum_rows = 0;
  for (std::size_t p : visible) sum_rows += row_sums_[p];
  cross_term_ = (static_cast<double>(visible.size()) * static_cast<double>(sum_a) - static_cast<double>(sum_rows)) /
                (m_ * m_);
}

double EprgiModel::eprgi(std::size_t k) const {
  if (k == 0 || k >= a_.size()) throw ValidationError("EPRGI bin must lie in 1..N-1");
  const double ak = static_cast<double>(a_[k]);
  const double first = (ak - mean_a_) * (ak - mean_a_);
  const double bracket = -ak + 2.0 / m_ * static_cast<double>(row_sums_[k]) + cross_term_;
  return first + (mu4_ - 1.0) * bracket;
}

double EprgiModel::neprgi(std::size_t k) const {
  const double ak = static_cast<double>(a_[k]);
  const double denom = ak * ak + (mu4_ - 1.0) * ak;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return eprgi(k) / denom;
}

IntMatrix slow_time_sidelobes(const SlowTimeMask& stm) {
  const IntMatrix rs = expected_sidelobe_matrix(stm.slow());
  const std::size_t l_len = stm.slow_length();
  const std::size_t t = stm.sub_pulse();
  const std::size_t n = l_len * t;
  auto slow = [&](std::size_t i, std::size_t j) { return rs(i % l_len, j % l_len); };
  IntMatrix out(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k1 = i / t;
    const std::size_t l1 = i % t;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k2 = j / t;
      const std::size_t l2 = j % t;
      const std::size_t lo = std::min(l1, l2);
      const auto hi = static_cast<long long>(std::max(l1, l2));
      out(i, j) = (static_cast<long long>(t) - hi) * slow(k1, k2) + static_cast<long long>(lo) * slow(k1 + 1, k2 + 1) +
                  static_cast<long long>(l1 - lo) * slow(k1 + 1, k2) + static_cast<long long>(l2 - lo) * slow(k1, k2 + 1);
    }
  }
  return out;
}

}  // namespace masm

#pragma once

#include <cstddef>
#include <vector>

#include "masm/mask.hpp"
#include "masm/matrix.hpp"

namespace masm {

/// Slow-time mask repeated T times per bit: expanded = slow (x) 1_T.
class SlowTimeMask {
 public:
  SlowTimeMask(TransmissionMask slow, std::size_t t);

  const TransmissionMask& slow() const noexcept { return slow_; }
  std::size_t sub_pulse() const noexcept { return t_; }
  std::size_t slow_length() const noexcept { return slow_.size(); }
  const TransmissionMask& expanded() const noexcept { return expanded_; }

 private:
  TransmissionMask slow_;
  std::size_t t_;
  TransmissionMask expanded_;
};

SlowTimeMask expand(const TransmissionMask& slow_bits, std::size_t t);

/// a_{kT+l} = T a~_k + l d_k with d_k = a~_{k+1} - a~_k.
std::vector<long long> interpolated_a(const SlowTimeMask& stm);

/// {0..w-1} U {N-w+1..N-1}: delays overlapping a transmit burst of width w that starts at 0.
std::vector<std::size_t> structural_blind_zone(std::size_t n, std::size_t width);
/// {0..T-1} U {(L-1)T+1..LT-1}.
std::vector<std::size_t> blind_zone(std::size_t l, std::size_t t);

/// Expected partial RGI with the mean taken over the bins outside a blind set.
class EprgiModel {
 public:
  EprgiModel(const TransmissionMask& mask, std::vector<std::size_t> blind, double mu4);

  std::size_t size() const noexcept { return a_.size(); }
  const std::vector<std::size_t>& blind() const noexcept { return blind_; }
  bool is_blind(std::size_t k) const noexcept { return blind_flag_[k] != 0; }

  /// (a_k - mean a)^2 + (mu4 - 1)[-a_k + (2/M) sum_q b_kq + (1/M^2) sum_pq (a_p - b_pq)].
  double eprgi(std::size_t k) const;
  /// eprgi / (a_k^2 + (mu4 - 1) a_k); +inf when the expected mainlobe is zero.
  double neprgi(std::size_t k) const;

 private:
  std::vector<long long> a_;
  std::vector<std::size_t> blind_;
  std::vector<char> blind_flag_;
  double mu4_;
  double mean_a_;
  double m_;
  // sum over visible q of b(k, q), for every k
  std::vector<long long> row_sums_;
  double cross_term_;
};

/// E|r(k1 T + l1, k2 T + l2)|^2 =
///   (T - max(l1,l2)) R~(k1,k2) + min(l1,l2) R~(k1+1,k2+1) + (l1 - min) R~(k1+1,k2) + (l2 - min) R~(k1,k2+1),
/// slow indices mod L. Diagonal holds a.
IntMatrix slow_time_sidelobes(const SlowTimeMask& stm);

}  // namespace masm

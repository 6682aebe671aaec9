#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "masm/matrix.hpp"

namespace masm {

/// Periodic (0,1) transmission mask of period N. Bit n = 1 means the symbol
/// slot is used for transmission, 0 means the receiver listens.
///
/// Construction enforces N >= 3 and 0 < weight < N. Bits are packed 64 per
/// word; the weight is cached.
class TransmissionMask {
 public:
  explicit TransmissionMask(std::span<const std::uint8_t> bits);

  static TransmissionMask from_string(std::string_view bits);
  static TransmissionMask from_support(std::size_t n, std::span<const std::size_t> support);

  std::size_t size() const noexcept { return n_; }
  std::size_t weight() const noexcept { return weight_; }
  double duty_cycle() const noexcept { return static_cast<double>(weight_) / static_cast<double>(n_); }

  bool operator[](std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }

  /// Bit at index i mod N for any signed i.
  bool cyclic(std::ptrdiff_t i) const noexcept;

  std::vector<std::uint8_t> bits() const;
  std::vector<std::size_t> support() const;
  std::string to_string() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// result[n] = (*this)[(n - shift) mod N].
  TransmissionMask rotated(std::size_t shift) const;
  /// Reception mask 1 - m as a mask (requires the same validity constraints).
  TransmissionMask complemented() const;

  friend bool operator==(const TransmissionMask&, const TransmissionMask&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t weight_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Row k holds the packed bits of n -> m((n - k) mod N).
class ShiftTable {
 public:
  explicit ShiftTable(const TransmissionMask& mask);

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return stride_; }
  std::span<const std::uint64_t> row(std::size_t k) const noexcept {
    return {data_.data() + k * stride_, stride_};
  }
  std::span<const std::uint64_t> reception() const noexcept { return reception_; }

 private:
  std::size_t n_;
  std::size_t stride_;
  std::vector<std::uint64_t> data_;
  std::vector<std::uint64_t> reception_;
};

/// Periodic ACF: acf[k] = sum_n m(n) m((n - k) mod N). Direct summation below
/// N = 64, real FFT with exact-integer verification above.
std::vector<long long> periodic_acf(const TransmissionMask& mask);
std::vector<long long> periodic_acf_direct(const TransmissionMask& mask);

/// overlap(k, l) = sum_n (1 - m(n)) m(n - k) m(n - l). Symmetric, row and column 0 are zero.
IntMatrix triple_overlap_matrix(const TransmissionMask& mask);

struct MaskCorrelations {
  std::vector<long long> acf;
  /// a[k] = sum_n (1 - m(n)) m(n - k) = weight - acf[k]
  std::vector<long long> a;
  /// b(l, p) = sum_n (1 - m(n)) m(n - l) m(n - (l - p))
  IntMatrix b;
};

MaskCorrelations mask_cross_correlation(const TransmissionMask& mask);

/// a[k] alone, without the O(N^2) b table.
std::vector<long long> reception_cross_correlation(const TransmissionMask& mask);

/// y = 1 - 2x.
std::vector<int> to_plus_minus(const TransmissionMask& mask);

/// Checks acf(y)[k] = N(1 - 4 rho) + 4 acf(x)[k] for every k, in integers.
bool acf_relation_check(const TransmissionMask& mask);

/// Lexicographically smallest rotation of the bit string ('0' < '1').
TransmissionMask canonical_rotation(const TransmissionMask& mask);

// Mask file: {"n": <int>, "bits": "1101000"}.
nlohmann::json mask_to_json(const TransmissionMask& mask);
TransmissionMask mask_from_json(const nlohmann::json& j);
TransmissionMask read_mask_file(const std::filesystem::path& path);

}  // namespace masm

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace masm {

bool is_prime(std::uint64_t n) noexcept;

struct PrimePower {
  std::uint64_t p;
  unsigned exponent;
};

// (p, e) with q = p^e, or nullopt if q is not a prime power.
std::optional<PrimePower> as_prime_power(std::uint64_t q) noexcept;

std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// GF(p^m). Elements are integers 0..p^m-1 whose base-p digits are the
/// coefficients of a polynomial in the primitive element alpha. The modulus
/// is the first monic polynomial (in increasing digit order) for which x has
/// multiplicative order p^m - 1.
class GaloisField {
 public:
  GaloisField(std::uint32_t p, unsigned m);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return m_; }
  std::uint32_t order() const noexcept { return q_; }

  /// Coefficients c_0..c_{m-1} of x^m + c_{m-1} x^{m-1} + ... + c_0.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;
  /// alpha^i for any i >= 0.
  std::uint32_t exp(std::uint64_t i) const noexcept { return exp_[i % (q_ - 1)]; }
  /// Discrete log of a nonzero element.
  std::uint32_t log(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;

  /// Trace from GF(p^m) down to the subfield GF(p^sub_degree): sum_j a^(Q^j), Q = p^sub_degree.
  std::uint32_t trace(std::uint32_t a, unsigned sub_degree) const;

 private:
  std::uint32_t p_;
  unsigned m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace masm

#include "masm/galois.hpp"

#include <stdexcept>
#include <string>

#include "masm/error.hpp"

namespace masm {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<PrimePower> as_prime_power(std::uint64_t q) noexcept {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return PrimePower{p, e};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

// Multiply an element by alpha modulo the monic polynomial given by coeffs.
std::uint32_t times_alpha(std::uint32_t a, std::uint32_t p, unsigned m, std::uint32_t top_place,
                          const std::vector<std::uint32_t>& coeffs) {
  const std::uint32_t top = a / top_place;
  std::uint32_t shifted = (a % top_place) * p;
  if (top == 0) return shifted;
  // x^m = -sum c_j x^j
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  for (unsigned j = 0; j < m; ++j) {
    const std::uint32_t digit = shifted % p;
    shifted /= p;
    const std::uint32_t sub = (top * coeffs[j]) % p;
    out += ((digit + p - sub) % p) * place;
    place *= p;
  }
  return out;
}

}  // namespace

GaloisField::GaloisField(std::uint32_t p, unsigned m) : p_(p), m_(m) {
  if (!is_prime(p)) throw ValidationError("field characteristic " + std::to_string(p) + " is not prime");
  if (m == 0) throw ValidationError("field degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw ValidationError("field order exceeds 2^20");
  }
  q_ = static_cast<std::uint32_t>(q);
  const std::uint32_t top_place = q_ / p_;

  exp_.resize(q_ - 1);
  modulus_.assign(m_, 0);
  // Enumerate candidate moduli by their packed coefficient value; constant term nonzero.
  for (std::uint32_t code = 1; code < q_; ++code) {
    std::uint32_t c = code;
    for (unsigned j = 0; j < m_; ++j) {
      modulus_[j] = c % p_;
      c /= p_;
    }
    if (modulus_[0] == 0) continue;
    std::uint32_t x = 1;
    std::uint32_t period = 0;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = x;
      x = m_ == 1 ? static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * ((p_ - modulus_[0]) % p_)) % p_)
                  : times_alpha(x, p_, m_, top_place, modulus_);
      if (x == 1) {
        period = i + 1;
        break;
      }
    }
    if (period == q_ - 1) break;
    if (code + 1 == q_) throw std::logic_error("no primitive polynomial found");
  }
  log_.assign(q_, 0);
  for (std::uint32_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
}

std::uint32_t GaloisField::add(std::uint32_t a, std::uint32_t b) const noexcept {
  if (p_ == 2) return a ^ b;
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  for (unsigned j = 0; j < m_; ++j) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const noexcept {
  if (a == 0 || b == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

std::uint32_t GaloisField::log(std::uint32_t a) const {
  if (a == 0 || a >= q_) throw std::domain_error("log of zero or out-of-field element");
  return log_[a];
}

std::uint32_t GaloisField::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

std::uint32_t GaloisField::trace(std::uint32_t a, unsigned sub_degree) const {
  if (sub_degree == 0 || m_ % sub_degree != 0)
    throw std::domain_error("trace target degree must divide the field degree");
  if (a == 0) return 0;
  std::uint64_t sub_order = 1;
  for (unsigned i = 0; i < sub_degree; ++i) sub_order *= p_;
  const std::uint64_t n = q_ - 1;
  std::uint64_t e = log_[a];
  std::uint32_t sum = 0;
  for (unsigned j = 0; j < m_ / sub_degree; ++j) {
    sum = add(sum, exp_[e]);
    e = (e * sub_order) % n;
  }
  return sum;
}

}  // namespace masm

#pragma once

#include <cstddef>
#include <ostream>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "masm/constellation.hpp"
#include "masm/mask.hpp"
#include "masm/matrix.hpp"

namespace masm {

/// Zero-padded symbols for PRIs -1, 0 and +1. Entry j + N holds x_j for
/// j in [-N, 2N).
class ThreePriSymbols {
 public:
  /// Rejects a wrong length or a nonzero symbol where the mask is 0.
  ThreePriSymbols(const TransmissionMask& mask, std::vector<cplx> values);

  std::size_t period() const noexcept { return n_; }
  const cplx& at(std::ptrdiff_t j) const noexcept { return values_[static_cast<std::size_t>(j + static_cast<std::ptrdiff_t>(n_))]; }
  std::span<const cplx> values() const noexcept { return values_; }
  /// x_0 ... x_{N-1}.
  std::span<const cplx> reference() const noexcept { return std::span<const cplx>(values_).subspan(n_, n_); }

 private:
  std::size_t n_;
  std::vector<cplx> values_;
};

/// Fresh i.i.d. symbols on the mask support of all three PRIs.
ThreePriSymbols draw_three_pri(const TransmissionMask& mask, const Constellation& c, std::mt19937_64& engine);

/// All symbols equal to 1 on the support.
ThreePriSymbols unit_three_pri(const TransmissionMask& mask);

/// r(k, l) = sum_{n=l}^{l+N-1} m_r(n) m_t(n-l) m_t(n-k) x_{n-k} conj(x_{n-l}),
/// the reference window being PRI 0.
cplx response_entry(const TransmissionMask& mask, const ThreePriSymbols& x, std::size_t k, std::size_t l);

/// Diagonal r(k, k) for every k. Uses only PRI 0; FFT correlation for N >= 64.
std::vector<double> realized_mainlobe(const TransmissionMask& mask, std::span<const cplx> x0);

struct ResponseRealization {
  Matrix<cplx> values;
};

ResponseRealization realize_response(const TransmissionMask& mask, const ThreePriSymbols& x);

/// R(k, l) = E|r(k, l)|^2 for k != l; diagonal a_k.
IntMatrix expected_sidelobe_matrix(const TransmissionMask& mask);

struct FullDuplexLevels {
  double mainlobe;
  double sidelobe;
  double ratio() const { return mainlobe / sidelobe; }
};

FullDuplexLevels full_duplex_reference(std::size_t n, double mu4);

void write_matrix_csv(std::ostream& out, const IntMatrix& m);
void write_matrix_csv(std::ostream& out, const Matrix<double>& m);

}  // namespace masm

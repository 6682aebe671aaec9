#include "masm/response.hpp"

#include <cmath>
#include <iomanip>

#include "masm/error.hpp"
#include "masm/fft.hpp"
#include "masm/rng.hpp"

namespace masm {
namespace {

constexpr std::size_t kDirectMainlobeLimit = 64;

}  // namespace

ThreePriSymbols::ThreePriSymbols(const TransmissionMask& mask, std::vector<cplx> values)
    : n_(mask.size()), values_(std::move(values)) {
  if (values_.size() != 3 * n_)
    throw ValidationError("three-PRI symbol vector must have length 3N = " + std::to_string(3 * n_) + ", got " +
                          std::to_string(values_.size()));
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!mask[j % n_] && values_[j] != cplx{0.0, 0.0})
      throw ValidationError("symbol at position " + std::to_string(j) + " is nonzero where the mask is 0");
  }
}

ThreePriSymbols draw_three_pri(const TransmissionMask& mask, const Constellation& c, std::mt19937_64& engine) {
  const std::size_t n = mask.size();
  std::vector<cplx> v(3 * n, cplx{0.0, 0.0});
  const auto& pts = c.points();
  for (std::size_t j = 0; j < 3 * n; ++j)
    if (mask[j % n]) v[j] = pts[uniform_index(engine, pts.size())];
  return ThreePriSymbols(mask, std::move(v));
}

ThreePriSymbols unit_three_pri(const TransmissionMask& mask) {
  const std::size_t n = mask.size();
  std::vector<cplx> v(3 * n, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < 3 * n; ++j)
    if (mask[j % n]) v[j] = 1.0;
  return ThreePriSymbols(mask, std::move(v));
}

cplx response_entry(const TransmissionMask& mask, const ThreePriSymbols& x, std::size_t k, std::size_t l) {
  const auto n = static_cast<std::ptrdiff_t>(mask.size());
  const auto sk = static_cast<std::ptrdiff_t>(k);
  const auto sl = static_cast<std::ptrdiff_t>(l);
  cplx acc{0.0, 0.0};
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    // t = n - l indexes the reference symbol in PRI 0.
    if (!mask[static_cast<std::size_t>(t)]) continue;
    const std::ptrdiff_t pos = t + sl;
    if (mask.cyclic(pos)) continue;
    const std::ptrdiff_t echo = pos - sk;
    if (!mask.cyclic(echo)) continue;
    acc += x.at(echo) * std::conj(x.at(t));
  }
  return acc;
}

std::vector<double> realized_mainlobe(const TransmissionMask& mask, std::span<const cplx> x0) {
  const std::size_t n = mask.size();
  if (x0.size() != n) throw ValidationError("reference PRI must have N symbols");
  std::vector<double> w(n);
  std::vector<double> recv(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = mask[i] ? std::norm(x0[i]) : 0.0;
    recv[i] = mask[i] ? 0.0 : 1.0;
  }
  if (n >= kDirectMainlobeLimit) {
    auto c = fft::cyclic_cross_correlation(recv, w);
    c[0] = 0.0;
    return c;
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += recv[(i + k) % n] * w[i];
    out[k] = s;
  }
  return out;
}

ResponseRealization realize_response(const TransmissionMask& mask, const ThreePriSymbols& x) {
  const std::size_t n = mask.size();
  ResponseRealization out{Matrix<cplx>(n, n)};
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) out.values(k, l) = response_entry(mask, x, k, l);
  return out;
}

IntMatrix expected_sidelobe_matrix(const TransmissionMask& mask) { return triple_overlap_matrix(mask); }

FullDuplexLevels full_duplex_reference(std::size_t n, double mu4) {
  if (n < 2) throw ValidationError("full-duplex reference needs N >= 2");
  const auto nn = static_cast<double>(n);
  return {nn * nn + (mu4 - 1.0) * nn, nn};
}

void write_matrix_csv(std::ostream& out, const IntMatrix& m) {
  out << "k,l,value\n";
  for (std::size_t k = 0; k < m.rows(); ++k)
    for (std::size_t l = 0; l < m.cols(); ++l) out << k << ',' << l << ',' << m(k, l) << '\n';
}

void write_matrix_csv(std::ostream& out, const Matrix<double>& m) {
  out << "k,l,value\n" << std::setprecision(17);
  for (std::size_t k = 0; k < m.rows(); ++k)
    for (std::size_t l = 0; l < m.cols(); ++l) out << k << ',' << l << ',' << m(k, l) << '\n';
}

}  // namespace masm

#pragma once

#include <span>
#include <vector>

namespace masm::fft {

// c[k] = sum_n a[n] * b[(n - k) mod N] for real sequences of equal length.
std::vector<double> cyclic_cross_correlation(std::span<const double> a, std::span<const double> b);

// |DFT(x)|^2 with the unnormalised transform X[f] = sum_n x[n] exp(-2 pi i f n / N).
std::vector<double> power_spectrum(std::span<const double> x);

}  // namespace masm::fft

namespace masm::fft {

const char* library_version();

}  // namespace masm::fft

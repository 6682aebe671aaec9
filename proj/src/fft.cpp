#include "masm/fft.hpp"

#include <fftw3.h>

#include <complex>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace masm::fft {
namespace {

// The FFTW planner is not re-entrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> allocate(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * (count == 0 ? 1 : count)));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

class Plan {
 public:
  explicit Plan(fftw_plan p) : plan_(p) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

std::vector<std::complex<double>> forward(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  const std::size_t bins = x.size() / 2 + 1;
  auto in = allocate<double>(x.size());
  auto out = allocate<fftw_complex>(bins);
  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = std::make_unique<Plan>(fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE));
  }
  std::copy(x.begin(), x.end(), in.get());
  plan->execute();
  std::vector<std::complex<double>> result(bins);
  for (std::size_t i = 0; i < bins; ++i) result[i] = {out[i][0], out[i][1]};
  return result;
}

std::vector<double> inverse(const std::vector<std::complex<double>>& spectrum, std::size_t n) {
  auto in = allocate<fftw_complex>(spectrum.size());
  auto out = allocate<double>(n);
  std::unique_ptr<Plan> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = std::make_unique<Plan>(
        fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
  }
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    in[i][0] = spectrum[i].real();
    in[i][1] = spectrum[i].imag();
  }
  plan->execute();
  std::vector<double> result(out.get(), out.get() + n);
  for (double& v : result) v /= static_cast<double>(n);
  return result;
}

}  // namespace

std::vector<double> cyclic_cross_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cyclic_cross_correlation: length mismatch");
  if (a.empty()) return {};
  auto fa = forward(a);
  const auto fb = forward(b);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= std::conj(fb[i]);
  return inverse(fa, a.size());
}

std::vector<double> power_spectrum(std::span<const double> x) {
  if (x.empty()) return {};
  const auto half = forward(x);
  const std::size_t n = x.size();
  std::vector<double> result(n);
  for (std::size_t f = 0; f < n; ++f) {
    const std::size_t mirror = f < half.size() ? f : n - f;
    result[f] = std::norm(half[mirror]);
  }
  return result;
}

}  // namespace masm::fft

namespace masm::fft {

const char* library_version() { return fftw_version; }

}  // namespace masm::fft

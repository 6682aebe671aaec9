#include "masm/monte_carlo.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <string>
#include <thread>

#include "masm/error.hpp"
#include "masm/families.hpp"
#include "masm/glint.hpp"
#include "masm/response.hpp"
#include "masm/rng.hpp"

namespace masm {
namespace {

constexpr double kDegenerateTolerance = 1e-9;

std::vector<cplx> draw_reference(const TransmissionMask& mask, const Constellation& c, std::mt19937_64& engine) {
  std::vector<cplx> x(mask.size(), cplx{0.0, 0.0});
  const auto& pts = c.points();
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) x[i] = pts[uniform_index(engine, pts.size())];
  return x;
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

std::size_t resolve_threads(std::size_t requested) {
  std::size_t t = requested;
  if (t == 0) {
    if (const char* env = std::getenv("MASM_THREADS")) {
      try {
        t = static_cast<std::size_t>(std::stoul(env));
      } catch (const std::exception&) {
        throw ValidationError(std::string("MASM_THREADS is not a nonnegative integer: ") + env);
      }
    }
  }
  if (t == 0) t = std::max(1U, std::thread::hardware_concurrency());
  return t;
}

McEstimate run_trials(std::size_t trials, std::uint64_t seed, std::size_t threads,
                      const std::function<double(std::mt19937_64&)>& trial) {
  if (trials < 2) throw ValidationError("Monte Carlo needs at least 2 trials");
  std::vector<double> values(trials);
  const std::size_t workers = std::min(resolve_threads(threads), trials);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto engine = stream_engine(seed, i);
      values[i] = trial(engine);
    }
  };
  if (workers <= 1) {
    work(0, trials);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(trials, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }
  const double mean = pairwise_sum(values) / static_cast<double>(trials);
  std::vector<double> sq(trials);
  for (std::size_t i = 0; i < trials; ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
  const double var = pairwise_sum(sq) / static_cast<double>(trials - 1);
  return {mean, std::sqrt(var / static_cast<double>(trials)), trials, std::move(values)};
}

SigmaCheck three_sigma_check(const McEstimate& est, double expected) {
  const double diff = std::abs(est.mean - expected);
  if (est.std_error == 0.0) return {diff <= kDegenerateTolerance, 0.0, true};
  const double z = diff / est.std_error;
  return {z <= 3.0, z, false};
}

McEstimate estimate_irgi(const McConfig& cfg, const TransmissionMask& mask) {
  return run_trials(cfg.trials, cfg.seed, cfg.threads, [&](std::mt19937_64& engine) {
    const auto x0 = draw_reference(mask, cfg.constellation, engine);
    return irgi(realized_mainlobe(mask, x0));
  });
}

McEstimate estimate_eprgi(const McConfig& cfg, const TransmissionMask& mask, std::span<const std::size_t> blind,
                          std::size_t k) {
  const std::size_t n = mask.size();
  if (k == 0 || k >= n) throw ValidationError("EPRGI bin must lie in 1..N-1");
  std::vector<char> is_blind(n, 0);
  for (std::size_t b : blind) {
    if (b >= n) throw ValidationError("blind bin outside 0..N-1");
    is_blind[b] = 1;
  }
  std::vector<std::size_t> visible;
  for (std::size_t p = 0; p < n; ++p)
    if (!is_blind[p]) visible.push_back(p);
  if (visible.empty()) throw ValidationError("blind set covers every bin");
  return run_trials(cfg.trials, cfg.seed, cfg.threads, [&](std::mt19937_64& engine) {
    const auto x0 = draw_reference(mask, cfg.constellation, engine);
    const auto r = realized_mainlobe(mask, x0);
    std::vector<double> vis(visible.size());
    for (std::size_t i = 0; i < visible.size(); ++i) vis[i] = r[visible[i]];
    const double d = r[k] - pairwise_sum(vis) / static_cast<double>(vis.size());
    return d * d;
  });
}

McEstimate estimate_sidelobe(const McConfig& cfg, const TransmissionMask& mask, std::size_t k, std::size_t l) {
  if (k >= mask.size() || l >= mask.size()) throw ValidationError("sidelobe indices must lie in 0..N-1");
  return run_trials(cfg.trials, cfg.seed, cfg.threads, [&](std::mt19937_64& engine) {
    const auto x = draw_three_pri(mask, cfg.constellation, engine);
    return std::norm(response_entry(mask, x, k, l));
  });
}

McEstimate estimate_random_mask_irgi(std::size_t n, double rho, const Constellation& c, std::size_t mask_trials,
                                     std::size_t symbol_trials, std::uint64_t seed, std::size_t threads) {
  if (symbol_trials == 0) throw ValidationError("symbol_trials must be positive");
  return run_trials(mask_trials, seed, threads, [&](std::mt19937_64& engine) {
    const auto mask = bernoulli_mask(n, rho, engine());
    double s = 0.0;
    for (std::size_t t = 0; t < symbol_trials; ++t) {
      const auto x0 = draw_reference(mask, c, engine);
      s += irgi(realized_mainlobe(mask, x0));
    }
    return s / static_cast<double>(symbol_trials);
  });
}

void write_samples_csv(std::ostream& out, const McEstimate& est) {
  out << "trial,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < est.samples.size(); ++i) out << i << ',' << est.samples[i] << '\n';
}

}  // namespace masm

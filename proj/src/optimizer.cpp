#include "masm/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "masm/error.hpp"
#include "masm/families.hpp"
#include "masm/sidelobe.hpp"

namespace masm {
namespace {

constexpr double kRelaxTolerance = 1e-6;
constexpr int kRelaxIterations = 400;
constexpr double kPruneSlack = 1e-6;
constexpr std::size_t kLocalSearchRestartsForIncumbent = 8;
constexpr std::size_t kMaxPeslSearchLength = 16;

void require_weight(std::size_t n, std::size_t weight) {
  if (n < 3) throw ValidationError("N must be at least 3");
  if (weight == 0 || weight >= n) throw ValidationError("weight must satisfy 0 < weight < N");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

long long energy_of(const std::vector<std::uint8_t>& m) {
  const std::size_t n = m.size();
  long long s = 0;
  for (std::size_t k = 0; k < n; ++k) {
    long long c = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (m[i] && m[(i + n - k) % n]) ++c;
    s += c * c;
  }
  return s;
}

std::vector<long long> acf_of(const std::vector<std::uint8_t>& m) {
  const std::size_t n = m.size();
  std::vector<long long> acf(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i] && m[(i + n - k) % n]) ++acf[k];
  return acf;
}

// Fixed-weight binary necklaces in lexicographic order (FKM with content pruning).
template <typename Visit>
class NecklaceWalker {
 public:
  NecklaceWalker(std::size_t n, std::size_t weight, Visit visit)
      : n_(n), w_(weight), a_(n + 1, 0), visit_(std::move(visit)) {}

  void run() { gen(1, 1, 0); }

 private:
  void gen(std::size_t t, std::size_t p, std::size_t ones) {
    if (ones > w_ || ones + (n_ - t + 1) < w_) return;
    if (t > n_) {
      if (n_ % p == 0) visit_(std::span<const std::uint8_t>(a_.data() + 1, n_));
      return;
    }
    a_[t] = a_[t - p];
    gen(t + 1, p, ones + a_[t]);
    if (a_[t - p] == 0) {
      a_[t] = 1;
      gen(t + 1, t, ones + 1);
    }
  }

  std::size_t n_;
  std::size_t w_;
  std::vector<std::uint8_t> a_;
  Visit visit_;
};

template <typename Score>
OptimizationResult enumerate_min(std::size_t n, std::size_t weight, Score score) {
  long long best = std::numeric_limits<long long>::max();
  std::vector<std::uint8_t> best_bits;
  std::uint64_t visited = 0;
  NecklaceWalker walker(n, weight, [&](std::span<const std::uint8_t> bits) {
    ++visited;
    const long long v = score(bits);
    if (v < best) {
      best = v;
      best_bits.assign(bits.begin(), bits.end());
    }
  });
  walker.run();
  TransmissionMask mask(best_bits);
  return {mask, objective_exact(mask), Method::exhaustive, Certificate::global_optimum, 0.0, visited, std::nullopt};
}

// Capped-simplex projection of y onto {0 <= x <= 1, sum x = s} by bisection on the shift.
void project_capped_simplex(std::vector<double>& y, double s) {
  if (y.empty()) return;
  auto mass = [&](double tau) {
    double m = 0.0;
    for (double v : y) m += std::clamp(v - tau, 0.0, 1.0);
    return m;
  };
  double lo = *std::min_element(y.begin(), y.end()) - 1.0;
  double hi = *std::max_element(y.begin(), y.end());
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mass(mid) > s) lo = mid; else hi = mid;
  }
  const double tau = 0.5 * (lo + hi);
  for (double& v : y) v = std::clamp(v - tau, 0.0, 1.0);
}

struct RelaxEval {
  double value;
  std::vector<double> grad;
};

RelaxEval relax_eval(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> acf(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += x[i] * x[(i + n - k) % n];
    acf[k] = c;
  }
  RelaxEval r{0.0, std::vector<double>(n, 0.0)};
  for (double c : acf) r.value += c * c;
  for (std::size_t i = 0; i < n; ++i) {
    double g = 0.0;
    for (std::size_t k = 0; k < n; ++k) g += acf[k] * x[(i + n - k) % n];
    r.grad[i] = 4.0 * g;
  }
  return r;
}

// Frank-Wolfe bound f(x) + min_s grad . (s - x) over the feasible polytope.
double frank_wolfe_bound(const RelaxEval& e, const std::vector<double>& x, const std::vector<std::size_t>& free_idx,
                         std::size_t free_ones) {
  std::vector<double> g;
  g.reserve(free_idx.size());
  double dot_x = 0.0;
  for (std::size_t i : free_idx) {
    g.push_back(e.grad[i]);
    dot_x += e.grad[i] * x[i];
  }
  std::sort(g.begin(), g.end());
  const double dot_s = std::accumulate(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(free_ones), 0.0);
  return e.value + dot_s - dot_x;
}

}  // namespace

long long acf_energy(const TransmissionMask& mask) {
  long long s = 0;
  for (long long v : periodic_acf(mask)) s += v * v;
  return s;
}

Rational objective_exact(const TransmissionMask& mask) {
  return Rational(acf_energy(mask), static_cast<std::int64_t>(mask.size()));
}

double objective(const TransmissionMask& mask) { return to_double(objective_exact(mask)); }

std::string to_string(Method m) {
  switch (m) {
    case Method::exhaustive: return "exhaustive";
    case Method::local_search: return "local_search";
    case Method::branch_and_bound: return "branch_and_bound";
  }
  return "unknown";
}

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::global_optimum: return "global_optimum";
    case Certificate::bound_gap: return "bound_gap";
    case Certificate::heuristic: return "heuristic";
  }
  return "unknown";
}

nlohmann::json to_json(const OptimizationResult& r) {
  nlohmann::json j{{"best_mask", mask_to_json(r.best_mask)},
                   {"objective", to_double(r.objective)},
                   {"objective_exact", to_string(r.objective)},
                   {"method", to_string(r.method)},
                   {"certificate", to_string(r.certificate)},
                   {"visited", r.visited}};
  j["gap"] = std::isnan(r.gap) ? nlohmann::json(nullptr) : nlohmann::json(r.gap);
  if (r.root_bound) j["root_bound"] = *r.root_bound;
  return j;
}

std::uint64_t necklace_count(std::size_t n, std::size_t weight) {
  const std::size_t g = std::gcd(n, weight);
  unsigned __int128 total = 0;
  for (std::size_t d = 1; d <= g; ++d)
    if (g % d == 0) total += static_cast<unsigned __int128>(euler_phi(d)) * binomial(n / d, weight / d);
  total /= n;
  return total > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                          : static_cast<std::uint64_t>(total);
}

OptimizationResult exhaustive(std::size_t n, std::size_t weight, std::uint64_t budget) {
  require_weight(n, weight);
  const auto count = necklace_count(n, weight);
  if (count > budget)
    throw BudgetExceeded("exhaustive search over " + std::to_string(count) + " necklaces exceeds the budget of " +
                             std::to_string(budget),
                         count, budget);
  std::vector<std::uint8_t> tmp(n);
  return enumerate_min(n, weight, [&](std::span<const std::uint8_t> bits) {
    tmp.assign(bits.begin(), bits.end());
    return energy_of(tmp);
  });
}

OptimizationResult exhaustive_pesl(std::size_t n, std::size_t weight) {
  require_weight(n, weight);
  if (n > kMaxPeslSearchLength) throw ValidationError("PESL search is limited to N <= 16");
  auto r = enumerate_min(n, weight, [&](std::span<const std::uint8_t> bits) {
    return pesl(TransmissionMask(bits));
  });
  return r;
}

TransmissionMask steepest_descent(const TransmissionMask& start, std::uint64_t* moves) {
  const std::size_t n = start.size();
  auto m = start.bits();
  auto acf = acf_of(m);
  std::vector<long long> acf1(n);
  std::uint64_t count = 0;
  for (;;) {
    long long best_delta = 0;
    std::size_t best_i = n;
    std::size_t best_j = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i]) continue;
      // Remove bit i.
      for (std::size_t k = 1; k < n; ++k) acf1[k] = acf[k] - m[(i + k) % n] - m[(i + n - k) % n];
      m[i] = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (m[j] || j == i) continue;
        long long delta = 0;
        for (std::size_t k = 1; k < n; ++k) {
          const long long v = acf1[k] + m[(j + k) % n] + m[(j + n - k) % n];
          delta += v * v - acf[k] * acf[k];
        }
        if (delta < best_delta) {
          best_delta = delta;
          best_i = i;
          best_j = j;
        }
      }
      m[i] = 1;
    }
    if (best_i == n) break;
    m[best_i] = 0;
    m[best_j] = 1;
    acf = acf_of(m);
    ++count;
  }
  if (moves) *moves = count;
  return TransmissionMask(m);
}

OptimizationResult local_search(std::size_t n, std::size_t weight, std::uint64_t seed, std::size_t restarts) {
  require_weight(n, weight);
  if (restarts == 0) throw ValidationError("local search needs at least one restart");
  std::optional<TransmissionMask> best;
  long long best_energy = std::numeric_limits<long long>::max();
  std::uint64_t visited = 0;
  for (std::size_t r = 0; r < restarts; ++r) {
    const auto start = random_fixed_weight_mask(n, weight, seed, r);
    std::uint64_t moves = 0;
    auto m = steepest_descent(start, &moves);
    visited += moves + 1;
    const long long e = acf_energy(m);
    if (e < best_energy) {
      best_energy = e;
      best = m;
    }
  }
  return {*best, objective_exact(*best), Method::local_search, Certificate::heuristic,
          std::numeric_limits<double>::quiet_NaN(), visited, std::nullopt};
}

double relaxation_lower_bound(std::size_t n, std::size_t weight, const std::vector<int>& fixed) {
  std::vector<double> x(n, 0.0);
  std::vector<std::size_t> free_idx;
  std::size_t fixed_ones = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (fixed[i] < 0) free_idx.push_back(i);
    else {
      x[i] = fixed[i];
      fixed_ones += static_cast<std::size_t>(fixed[i]);
    }
  }
  if (fixed_ones > weight || fixed_ones + free_idx.size() < weight) return std::numeric_limits<double>::infinity();
  const std::size_t free_ones = weight - fixed_ones;
  const auto w = static_cast<double>(weight);
  // Cauchy-Schwarz over the off-peak lags.
  const double cs_bound = w * w + (w * w - w) * (w * w - w) / static_cast<double>(n - 1);
  if (free_idx.empty()) return relax_eval(x).value;

  const double share = static_cast<double>(free_ones) / static_cast<double>(free_idx.size());
  for (std::size_t i : free_idx) x[i] = share;
  auto e = relax_eval(x);
  double best_bound = std::max(cs_bound, frank_wolfe_bound(e, x, free_idx, free_ones));
  double step = 1.0 / (4.0 * w * w + 1.0);
  std::vector<double> y(free_idx.size());
  std::vector<double> x_new = x;
  for (int it = 0; it < kRelaxIterations; ++it) {
    RelaxEval e_new;
    for (;;) {
      for (std::size_t t = 0; t < free_idx.size(); ++t) y[t] = x[free_idx[t]] - step * e.grad[free_idx[t]];
      project_capped_simplex(y, static_cast<double>(free_ones));
      for (std::size_t t = 0; t < free_idx.size(); ++t) x_new[free_idx[t]] = y[t];
      e_new = relax_eval(x_new);
      double lin = 0.0;
      double sq = 0.0;
      for (std::size_t i : free_idx) {
        const double d = x_new[i] - x[i];
        lin += e.grad[i] * d;
        sq += d * d;
      }
      if (e_new.value <= e.value + lin + sq / (2.0 * step) + 1e-12) break;
      step *= 0.5;
      if (step < 1e-12) break;
    }
    double moved = 0.0;
    for (std::size_t i : free_idx) moved = std::max(moved, std::abs(x_new[i] - x[i]));
    x = x_new;
    e = std::move(e_new);
    const double fw = frank_wolfe_bound(e, x, free_idx, free_ones);
    best_bound = std::max(best_bound, fw);
    if (e.value - fw < kRelaxTolerance * std::max(1.0, e.value) || moved < kRelaxTolerance) break;
    step *= 2.0;
  }
  return best_bound;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(std::size_t n, std::size_t weight, std::uint64_t budget, long long incumbent,
                 std::vector<std::uint8_t> incumbent_bits)
      : n_(n), w_(weight), budget_(budget), fixed_(n, -1), best_(incumbent), best_bits_(std::move(incumbent_bits)) {}

  void run() {
    fixed_[0] = 1;
    const double root = relaxation_lower_bound(n_, w_, fixed_);
    root_bound_ = root;
    open_min_ = std::numeric_limits<double>::infinity();
    dfs(1, 1, root);
  }

  bool closed() const { return !exhausted_; }
  double root_bound() const { return root_bound_; }
  double open_min() const { return open_min_; }
  std::uint64_t nodes() const { return nodes_; }
  long long best() const { return best_; }
  const std::vector<std::uint8_t>& best_bits() const { return best_bits_; }

 private:
  void dfs(std::size_t t, std::size_t ones, double parent_bound) {
    if (exhausted_) {
      open_min_ = std::min(open_min_, parent_bound);
      return;
    }
    ++nodes_;
    const std::size_t remaining = n_ - t;
    if (ones == w_ || ones + remaining == w_) {
      std::vector<std::uint8_t> bits(n_);
      for (std::size_t i = 0; i < t; ++i) bits[i] = static_cast<std::uint8_t>(fixed_[i]);
      for (std::size_t i = t; i < n_; ++i) bits[i] = ones == w_ ? 0 : 1;
      const long long e = energy_of(bits);
      if (e < best_) {
        best_ = e;
        best_bits_ = std::move(bits);
      }
      return;
    }
    if (nodes_ >= budget_) {
      exhausted_ = true;
      open_min_ = std::min(open_min_, parent_bound);
      return;
    }
    for (int v : {1, 0}) {
      fixed_[t] = v;
      const double lb = relaxation_lower_bound(n_, w_, fixed_);
      if (lb <= static_cast<double>(best_) - 1.0 + kPruneSlack) dfs(t + 1, ones + static_cast<std::size_t>(v), lb);
      fixed_[t] = -1;
    }
  }

  std::size_t n_;
  std::size_t w_;
  std::uint64_t budget_;
  std::vector<int> fixed_;
  long long best_;
  std::vector<std::uint8_t> best_bits_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  double root_bound_ = 0.0;
  double open_min_ = 0.0;
};

}  // namespace

OptimizationResult branch_and_bound(std::size_t n, std::size_t weight, std::uint64_t budget) {
  require_weight(n, weight);
  const auto start = local_search(n, weight, 0, kLocalSearchRestartsForIncumbent);
  // Rotate the incumbent so bit 0 is set, matching the search convention.
  auto bits = start.best_mask.bits();
  const auto first = static_cast<std::size_t>(std::find(bits.begin(), bits.end(), 1) - bits.begin());
  std::rotate(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(first), bits.end());
  BranchAndBound bb(n, weight, budget, acf_energy(start.best_mask), bits);
  bb.run();
  TransmissionMask best(bb.best_bits());
  const auto obj = objective_exact(best);
  OptimizationResult r{best, obj, Method::branch_and_bound, Certificate::global_optimum, 0.0, bb.nodes(),
                       bb.root_bound() / static_cast<double>(n)};
  if (!bb.closed()) {
    r.certificate = Certificate::bound_gap;
    const double lower = std::max(bb.root_bound(), std::min(bb.open_min(), static_cast<double>(bb.best())));
    r.gap = (static_cast<double>(bb.best()) - lower) / static_cast<double>(n);
  }
  return r;
}

}  // namespace masm

#include "masm/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "masm/error.hpp"
#include "masm/families.hpp"
#include "masm/fft.hpp"
#include "masm/glint.hpp"
#include "masm/monte_carlo.hpp"
#include "masm/optimizer.hpp"
#include "masm/response.hpp"
#include "masm/sidelobe.hpp"
#include "masm/slow_time.hpp"

namespace masm {
namespace {

constexpr unsigned kSlowTimeDegree = 6;
constexpr std::size_t kSlowTimeT = 16;
constexpr std::size_t kFig6Delay = 29;
constexpr std::size_t kFig8Bins = 8;

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

std::string plan_label(const StaggerPlan& p) {
  std::string s = "stagger";
  for (std::size_t r : p.ratios) s += "_" + std::to_string(r);
  return s;
}

struct Recipe {
  nlohmann::json params;
  nlohmann::json checks;
  std::vector<std::string> files;
};

// Expected mainlobe per family for the fast-time comparison.
Recipe fig3(const RecipeOptions& o, const std::filesystem::path& dir) {
  struct Family {
    std::string name;
    TransmissionMask mask;
  };
  const auto optimal = exhaustive(22, 11);
  const std::vector<Family> families = {
      {"contiguous_22_11", contiguous_pulse(22, 11)},
      {"random_22", bernoulli_mask(22, 0.5, o.seed)},
      {"optimal_22_11", optimal.best_mask},
      {"paley_23", paley_mask(23)},
  };
  auto out = open_output(dir / "mainlobe.csv");
  out << "family,n,k,expected_mainlobe\n";
  Recipe r;
  for (const auto& f : families) {
    const auto a = reception_cross_correlation(f.mask);
    for (std::size_t k = 0; k < a.size(); ++k) out << f.name << ',' << a.size() << ',' << k << ',' << a[k] << '\n';
    r.checks["bins_off_modal_level"][f.name] = bins_off_modal_level(a);
  }
  r.params = {{"seed", o.seed}, {"random_rho", 0.5}};
  r.checks["optimal_mask"] = optimal.best_mask.to_string();
  r.files = {"mainlobe.csv"};
  return r;
}

Recipe fig_irgi_scaling(const RecipeOptions&, const std::filesystem::path& dir) {
  const std::vector<Constellation> cs = {make_psk(4), make_qam(16), make_qam(64)};
  const auto rows = scaling_rows(3, 10, cs);
  auto out = open_output(dir / "irgi_scaling.csv");
  out << "family,constellation,n,weight,eargi,mean_mainlobe,ratio\n";
  for (const auto& row : rows)
    out << row.family << ',' << row.constellation << ',' << row.n << ',' << row.weight << ',' << num(row.eargi) << ','
        << num(row.mean_mainlobe) << ',' << num(row.ratio) << '\n';
  Recipe r;
  r.params = {{"degrees", {3, 10}}, {"constellations", {"qpsk", "16qam", "64qam"}}};
  r.files = {"irgi_scaling.csv"};
  return r;
}

Recipe fig4(const RecipeOptions&, const std::filesystem::path& dir) {
  Recipe r;
  const std::vector<std::pair<std::string, TransmissionMask>> masks = {{"singer_pg5_2", singer_mask(5, 2)},
                                                                       {"gmw_63", gmw63_mask()}};
  for (const auto& [name, mask] : masks) {
    const auto rm = expected_sidelobe_matrix(mask);
    auto out = open_output(dir / (name + ".csv"));
    write_matrix_csv(out, rm);
    r.files.push_back(name + ".csv");
    r.checks[name] = {{"pesl", off_diagonal_max(rm)},
                      {"aesl", to_string(off_diagonal_mean(rm))},
                      {"pesl_lower_bound", pesl_lower_bound(mask.size(), mask.weight())}};
  }
  r.params = {{"n", 63}, {"weight", 31}};
  return r;
}

Recipe fig6(const RecipeOptions& o, const std::filesystem::path& dir) {
  const auto qpsk = make_psk(4);
  auto out = open_output(dir / "slices.csv");
  out << "n,rho,l,normalized_expected,reference\n";
  Recipe r;
  for (unsigned pg : {5U, 7U, 9U}) {
    const auto s = singer_slice(pg, 2, kFig6Delay, qpsk.mu4());
    for (std::size_t l = 0; l < s.n; ++l)
      out << s.n << ',' << num(s.rho) << ',' << l << ',' << num(s.normalized[l]) << ',' << num(s.reference) << '\n';
    r.checks[std::to_string(s.n)] = {{"mean_normalized", s.mean_normalized},
                                     {"peak_normalized", s.peak_normalized},
                                     {"reference", s.reference}};
  }
  // Averaged slice for N = 63 from simulated symbol draws.
  const auto mask = singer_mask(5, 2);
  const auto a = reception_cross_correlation(mask);
  const double mainlobe = static_cast<double>(a[kFig6Delay] * a[kFig6Delay]);
  auto sim = open_output(dir / "slice_simulated_63.csv");
  sim << "l,averaged,std_error\n";
  McConfig cfg{o.trials, o.seed, qpsk, o.threads};
  for (std::size_t l = 0; l < mask.size(); ++l) {
    const auto est = estimate_sidelobe(cfg, mask, kFig6Delay, l);
    sim << l << ',' << num(est.mean / mainlobe) << ',' << num(est.std_error / mainlobe) << '\n';
  }
  r.params = {{"k", kFig6Delay}, {"constellation", "qpsk"}, {"trials", o.trials}, {"seed", o.seed}};
  r.files = {"slices.csv", "slice_simulated_63.csv"};
  return r;
}

Recipe fig7(const RecipeOptions& o, const std::filesystem::path& dir) {
  const auto curves = fig7_curves(make_qam(16).mu4(), o.common_blind);
  std::size_t rows = 0;
  for (const auto& c : curves) rows = std::max(rows, c.mask.size());
  auto out = open_output(dir / "neprgi.csv");
  out << "k";
  for (const auto& c : curves) out << ",neprgi_" << c.name;
  out << '\n';
  // Blind bins and delays beyond a mask's period are left empty.
  for (std::size_t k = 1; k < rows; ++k) {
    out << k;
    for (const auto& c : curves) {
      out << ',';
      if (k < c.mask.size() && std::find(c.blind.begin(), c.blind.end(), k) == c.blind.end()) out << num(c.neprgi[k]);
    }
    out << '\n';
  }
  Recipe r;
  for (const auto& f : fig7_fractions(curves))
    r.checks["fraction_at_least_10x"][f.name] = {{"compared", f.compared}, {"fraction", f.fraction()}};
  r.params = {{"slow_mask", "m-sequence degree 6"}, {"T", kSlowTimeT}, {"constellation", "16qam"},
              {"common_blind", o.common_blind}};
  r.files = {"neprgi.csv"};
  return r;
}

Recipe fig8(const RecipeOptions& o, const std::filesystem::path& dir) {
  const auto stm = expand(m_sequence_mask(kSlowTimeDegree), kSlowTimeT);
  const auto& mask = stm.expanded();
  const auto blind = blind_zone(stm.slow_length(), kSlowTimeT);
  const std::size_t first = kSlowTimeT;
  const std::size_t last = (stm.slow_length() - 1) * kSlowTimeT;
  std::vector<std::size_t> bins;
  for (std::size_t i = 0; i < kFig8Bins; ++i) bins.push_back(first + i * (last - first) / (kFig8Bins - 1));

  const std::vector<Constellation> cs = {make_psk(4), make_qam(16), make_qam(64), make_qam(256)};
  auto out = open_output(dir / "eprgi_constellations.csv");
  out << "constellation,mu4,k,neprgi_expected,neprgi_averaged,std_error\n";
  Recipe r;
  std::size_t passed = 0;
  for (const auto& c : cs) {
    const EprgiModel model(mask, blind, c.mu4());
    const auto a = reception_cross_correlation(mask);
    McConfig cfg{o.trials, o.seed, c, o.threads};
    for (std::size_t k : bins) {
      const auto est = estimate_eprgi(cfg, mask, blind, k);
      const double ak = static_cast<double>(a[k]);
      const double denom = ak * ak + (c.mu4() - 1.0) * ak;
      out << c.name() << ',' << num(c.mu4()) << ',' << k << ',' << num(model.neprgi(k)) << ','
          << num(est.mean / denom) << ',' << num(est.std_error / denom) << '\n';
      if (three_sigma_check(est, model.eprgi(k)).pass) ++passed;
    }
  }
  r.checks["three_sigma_pass"] = {{"passed", passed}, {"total", bins.size() * cs.size()}};
  r.params = {{"slow_mask", "m-sequence degree 6"}, {"T", kSlowTimeT}, {"trials", o.trials}, {"seed", o.seed},
              {"bins", bins}};
  r.files = {"eprgi_constellations.csv"};
  return r;
}

Recipe table1(const RecipeOptions&, const std::filesystem::path& dir) {
  const std::vector<Constellation> cs = {make_psk(4), make_qam(16)};
  const auto rows = scaling_rows(4, 10, cs);
  std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>> series;
  for (const auto& row : rows) {
    auto& s = series[{row.family, row.constellation}];
    s.first.push_back(static_cast<double>(row.n));
    s.second.push_back(row.ratio);
  }
  auto out = open_output(dir / "scaling.csv");
  out << "family,constellation,loglog_slope,ratio_min,ratio_max\n";
  Recipe r;
  for (const auto& [key, s] : series) {
    const bool all_positive = std::all_of(s.second.begin(), s.second.end(), [](double v) { return v > 0.0; });
    const double slope = all_positive ? loglog_slope(s.first, s.second) : std::numeric_limits<double>::quiet_NaN();
    const auto [lo, hi] = std::minmax_element(s.second.begin(), s.second.end());
    out << key.first << ',' << key.second << ',' << num(slope) << ',' << num(*lo) << ',' << num(*hi) << '\n';
    if (key.first != "random_closed_form") {
      double mean = 0.0;
      for (double v : s.second) mean += v;
      mean /= static_cast<double>(s.second.size());
      const double dev = std::max(*hi / mean - 1.0, 1.0 - *lo / mean);
      const auto slope_json = std::isnan(slope) ? nlohmann::json(nullptr) : nlohmann::json(slope);
      r.checks[key.first + "_" + key.second] = {{"loglog_slope", slope_json}, {"max_relative_deviation", dev}};
    }
  }
  r.params = {{"degrees", {4, 10}}, {"constellations", {"qpsk", "16qam"}}};
  r.files = {"scaling.csv"};
  return r;
}

Recipe table2(const RecipeOptions&, const std::filesystem::path& dir) {
  struct Row {
    unsigned n;
    std::uint64_t q;
  };
  auto out = open_output(dir / "cds.csv");
  out << "projective_space,n,weight,lambda,canonical_support,matches_table\n";
  Recipe r;
  for (const Row row : {Row{2, 2}, Row{2, 3}, Row{3, 2}, Row{3, 3}}) {
    const auto mask = singer_mask(row.n, row.q);
    const auto params = certify_cds(mask);
    const auto stored = known_cds_table(mask.size(), mask.weight());
    const bool match = stored && cyclic_decimation_equivalent(mask, *stored);
    std::string support;
    for (std::size_t i : canonical_rotation(mask).support()) support += (support.empty() ? "" : " ") + std::to_string(i);
    const std::string label = "PG(" + std::to_string(row.n) + "," + std::to_string(row.q) + ")";
    out << label << ',' << mask.size() << ',' << mask.weight() << ',' << params->lambda << ',' << support << ','
        << (match ? "true" : "false") << '\n';
    r.checks[label] = match;
  }
  r.files = {"cds.csv"};
  r.params = nlohmann::json::object();
  return r;
}

Recipe table3(const RecipeOptions&, const std::filesystem::path& dir) {
  auto out = open_output(dir / "stagger.csv");
  out << "ratios,periods_per_prf,pulse_width,pri_quantum,total_length,duty_cycle\n";
  Recipe r;
  for (const auto& plan : reference_stagger_plans()) {
    const auto mask = stagger_mask(plan);
    std::string ratios;
    for (std::size_t x : plan.ratios) ratios += (ratios.empty() ? "" : ":") + std::to_string(x);
    char duty[16];
    std::snprintf(duty, sizeof duty, "%.3f", mask.duty_cycle());
    out << ratios << ',' << plan.periods_per_prf << ',' << plan.pulse_width << ',' << plan.pri_quantum << ','
        << mask.size() << ',' << duty << '\n';
    r.checks[ratios] = duty;
  }
  r.files = {"stagger.csv"};
  r.params = nlohmann::json::object();
  return r;
}

}  // namespace

std::size_t bins_off_modal_level(std::span<const long long> values) {
  std::map<long long, std::size_t> counts;
  for (std::size_t k = 1; k < values.size(); ++k) ++counts[values[k]];
  std::size_t modal = 0;
  for (const auto& [v, c] : counts) modal = std::max(modal, c);
  return values.size() - 1 - modal;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("slope fit needs two or more points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::vector<ScalingRow> scaling_rows(unsigned d_min, unsigned d_max, std::span<const Constellation> constellations) {
  std::vector<ScalingRow> rows;
  for (const auto& c : constellations) {
    for (unsigned d = d_min; d <= d_max; ++d) {
      const auto mseq = m_sequence_mask(d);
      const std::size_t n = mseq.size();
      const std::size_t w = mseq.weight();
      const double mean_a = static_cast<double>(w) * static_cast<double>(n - w) / static_cast<double>(n - 1);
      auto push = [&](const std::string& family, double eargi) {
        rows.push_back({family, c.name(), n, w, eargi, mean_a, eargi / (mean_a * mean_a)});
      };
      push("m_sequence", eargi_payload(mseq, c.mu4()));
      push("contiguous", eargi_payload(contiguous_pulse(n, w), c.mu4()));
      push("random_closed_form", eargi_random_mask(n, static_cast<double>(w) / static_cast<double>(n), c.mu4()));
    }
  }
  return rows;
}

SliceSummary singer_slice(unsigned pg_n, std::uint64_t q, std::size_t k, double mu4) {
  const auto mask = singer_mask(pg_n, q);
  const std::size_t n = mask.size();
  if (k == 0 || k >= n) throw ValidationError("slice delay must lie in 1..N-1");
  const auto rm = expected_sidelobe_matrix(mask);
  const double a = static_cast<double>(rm(k, k));
  const double mainlobe = a * a + (mu4 - 1.0) * a;
  SliceSummary s{n, mask.duty_cycle(), k, std::vector<double>(n), 0.0, 0.0, 0.0};
  double sum = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    s.normalized[l] = static_cast<double>(rm(k, l)) / mainlobe;
    if (l != 0 && l != k) {
      sum += s.normalized[l];
      s.peak_normalized = std::max(s.peak_normalized, s.normalized[l]);
    }
  }
  s.mean_normalized = sum / static_cast<double>(n - 2);
  s.reference = 1.0 / ((1.0 - s.rho) * static_cast<double>(n));
  return s;
}

std::vector<NeprgiCurve> fig7_curves(double mu4, bool common_blind) {
  const auto stm = expand(m_sequence_mask(kSlowTimeDegree), kSlowTimeT);
  const auto slow_blind = blind_zone(stm.slow_length(), kSlowTimeT);
  std::vector<NeprgiCurve> curves;
  auto add = [&](std::string name, const TransmissionMask& mask, std::vector<std::size_t> blind) {
    const EprgiModel model(mask, blind, mu4);
    std::vector<double> v(mask.size(), 0.0);
    for (std::size_t k = 1; k < mask.size(); ++k) v[k] = model.neprgi(k);
    curves.push_back({std::move(name), mask, std::move(blind), std::move(v)});
  };
  add("masm", stm.expanded(), slow_blind);
  for (const auto& plan : reference_stagger_plans()) {
    const auto mask = stagger_mask(plan);
    std::vector<std::size_t> blind;
    if (common_blind) {
      for (std::size_t k : slow_blind)
        if (k < mask.size()) blind.push_back(k);
    } else {
      blind = structural_blind_zone(mask.size(), plan.pulse_width);
    }
    add(plan_label(plan), mask, std::move(blind));
  }
  return curves;
}

std::vector<Fig7Fraction> fig7_fractions(const std::vector<NeprgiCurve>& curves) {
  const auto& ref = curves.front();
  auto blind = [](const NeprgiCurve& c, std::size_t k) {
    return std::find(c.blind.begin(), c.blind.end(), k) != c.blind.end();
  };
  std::vector<Fig7Fraction> out;
  for (std::size_t i = 1; i < curves.size(); ++i) {
    const auto& c = curves[i];
    Fig7Fraction f{c.name, 0, 0};
    const std::size_t limit = std::min(ref.mask.size(), c.mask.size());
    for (std::size_t k = 1; k < limit; ++k) {
      if (blind(ref, k) || blind(c, k)) continue;
      ++f.compared;
      if (c.neprgi[k] >= 10.0 * ref.neprgi[k]) ++f.at_least_10x;
    }
    out.push_back(f);
  }
  return out;
}

const std::vector<std::string>& recipe_names() {
  static const std::vector<std::string> names = {"fig3_mainlobe",  "fig_irgi_scaling",    "fig4_sidelobe_heatmaps",
                                                 "fig6_slices",    "fig7_eprgi",          "fig8_constellations",
                                                 "table1_scaling", "table2_cds",          "table3_stagger"};
  return names;
}

nlohmann::json run_recipe(const std::string& name, const RecipeOptions& options) {
  const auto dir = options.output_dir / name;
  std::filesystem::create_directories(dir);
  Recipe r;
  if (name == "fig3_mainlobe") r = fig3(options, dir);
  else if (name == "fig_irgi_scaling") r = fig_irgi_scaling(options, dir);
  else if (name == "fig4_sidelobe_heatmaps") r = fig4(options, dir);
  else if (name == "fig6_slices") r = fig6(options, dir);
  else if (name == "fig7_eprgi") r = fig7(options, dir);
  else if (name == "fig8_constellations") r = fig8(options, dir);
  else if (name == "table1_scaling") r = table1(options, dir);
  else if (name == "table2_cds") r = table2(options, dir);
  else if (name == "table3_stagger") r = table3(options, dir);
  else throw ValidationError("unknown recipe '" + name + "'");

  nlohmann::json manifest{{"recipe", name},
                          {"versions", {{"masm", kVersion}, {"fftw", fft::library_version()}}},
                          {"params", r.params},
                          {"checks", r.checks},
                          {"files", r.files}};
  auto out = open_output(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
  return manifest;
}

}  // namespace masm

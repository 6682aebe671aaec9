#include "masm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>

#include "masm/constellation.hpp"
#include "masm/error.hpp"
#include "masm/families.hpp"
#include "masm/glint.hpp"
#include "masm/monte_carlo.hpp"
#include "masm/optimizer.hpp"
#include "masm/recipes.hpp"
#include "masm/response.hpp"
#include "masm/sidelobe.hpp"
#include "masm/slow_time.hpp"

namespace masm {
namespace {

// Family specifier shared by every subcommand that consumes a mask.
struct MaskSpec {
  std::string mask_file;
  std::string family;
  std::size_t n = 0;
  std::size_t weight = 0;
  double rho = 0.5;
  unsigned degree = 0;
  bool complement = false;
  std::size_t p = 0;
  std::uint64_t q = 0;
  unsigned pg_n = 0;
  std::string plan_file;
  std::string bits;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mask-file", mask_file, "Mask JSON file {\"n\", \"bits\"}");
    cmd->add_option("--family", family,
                    "contiguous | bernoulli | random | m-sequence | paley | singer | table | gmw | stagger | bits");
    cmd->add_option("--n", n, "Mask length");
    cmd->add_option("--weight", weight, "Number of transmit symbols");
    cmd->add_option("--rho", rho, "Bernoulli duty cycle");
    cmd->add_option("--degree", degree, "m-sequence degree");
    cmd->add_flag("--complement", complement, "m-sequence: use the weight 2^(d-1) polarity");
    cmd->add_option("--p", p, "Paley prime");
    cmd->add_option("--q", q, "Singer field order");
    cmd->add_option("--pg-n", pg_n, "Singer projective dimension");
    cmd->add_option("--plan-file", plan_file, "Stagger plan JSON {ratios, periods_per_prf, pulse_width, pri_quantum}");
    cmd->add_option("--bits", bits, "Literal 0/1 string");
  }

  TransmissionMask build(std::uint64_t seed) const {
    if (!mask_file.empty()) {
      if (!family.empty()) throw ValidationError("--mask-file and --family are mutually exclusive");
      return read_mask_file(mask_file);
    }
    if (family.empty()) throw ValidationError("a mask is required: pass --mask-file or --family");
    if (family == "contiguous") return contiguous_pulse(n, weight);
    if (family == "bernoulli") return bernoulli_mask(n, rho, seed);
    if (family == "random") return random_fixed_weight_mask(n, weight, seed);
    if (family == "m-sequence") return m_sequence_mask(degree, complement);
    if (family == "paley") return paley_mask(p);
    if (family == "singer") return singer_mask(pg_n, q);
    if (family == "gmw") return gmw63_mask();
    if (family == "bits") return TransmissionMask::from_string(bits);
    if (family == "table") {
      auto m = known_cds_table(n, weight);
      if (!m)
        throw ValidationError("no stored difference set for N=" + std::to_string(n) + ", weight=" +
                              std::to_string(weight) + "; stored entries: 7/3, 13/4, 15/7, 40/13, 63/31");
      return *m;
    }
    if (family == "stagger") {
      if (plan_file.empty()) throw ValidationError("--family stagger needs --plan-file");
      std::ifstream in(plan_file);
      if (!in) throw ValidationError("cannot open plan file " + plan_file);
      try {
        return stagger_mask(stagger_plan_from_json(nlohmann::json::parse(in)));
      } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("plan file " + plan_file + ": " + e.what());
      }
    }
    throw ValidationError("unknown mask family '" + family + "'");
  }
};

struct Common {
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out, "Output file (default stdout)");
  }
};

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ValidationError("cannot write " + path);
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Design and analysis of half-duplex transmission masks", "masm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // gen-mask
  auto* gen = app.add_subcommand("gen-mask", "Construct a mask and print it");
  MaskSpec gen_spec;
  Common gen_common;
  gen_spec.attach(gen);
  gen_common.attach(gen);

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Mainlobe-fluctuation report");
  MaskSpec met_spec;
  Common met_common;
  std::string met_const = "qpsk";
  double c_th = kDefaultGlintThreshold;
  met_spec.attach(metrics);
  met_common.attach(metrics);
  metrics->add_option("--constellation", met_const, "qpsk, 8psk, 16qam, ...");
  metrics->add_option("--c-th", c_th, "Blind-range threshold in (0,1)");

  // sidelobe
  auto* side = app.add_subcommand("sidelobe", "Expected sidelobe report or matrix");
  MaskSpec side_spec;
  Common side_common;
  std::string side_const = "qpsk";
  side_spec.attach(side);
  side_common.attach(side);
  side->add_option("--constellation", side_const, "qpsk, 8psk, 16qam, ...");

  // slow-time
  auto* slow = app.add_subcommand("slow-time", "Slow-time expansion, a-sequence and NEPRGI");
  MaskSpec slow_spec;
  Common slow_common;
  std::size_t slow_t = 1;
  std::string slow_const = "16qam";
  slow_spec.attach(slow);
  slow_common.attach(slow);
  slow->add_option("--T", slow_t, "Sub-pulse length")->required();
  slow->add_option("--constellation", slow_const, "qpsk, 16qam, ...");

  // optimize
  auto* opt = app.add_subcommand("optimize", "Minimize the l4 norm of the mask spectrum");
  std::size_t opt_n = 0;
  std::size_t opt_w = 0;
  std::string method = "exhaustive";
  std::uint64_t budget = 0;
  std::size_t restarts = 20;
  Common opt_common;
  opt->add_option("--n", opt_n, "Mask length")->required();
  opt->add_option("--weight", opt_w, "Mask weight")->required();
  opt->add_option("--method", method, "exhaustive | local | bnb")->check(CLI::IsMember({"exhaustive", "local", "bnb"}));
  opt->add_option("--budget", budget, "Necklace budget (exhaustive) or node budget (bnb)");
  opt->add_option("--restarts", restarts, "Local-search restarts");
  opt_common.attach(opt);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimates");
  MaskSpec sim_spec;
  Common sim_common;
  std::string sim_recipe;
  std::string metric = "irgi";
  std::size_t trials = 2000;
  std::size_t sim_k = 1;
  std::size_t sim_l = 2;
  std::size_t sim_t = 0;
  std::string sim_const = "qpsk";
  std::string sim_out_dir = "out";
  sim_spec.attach(sim);
  sim_common.attach(sim);
  sim->add_option("--recipe", sim_recipe, "Run a simulation recipe (fig6, fig8)");
  sim->add_option("--metric", metric, "irgi | eprgi | sidelobe")->check(CLI::IsMember({"irgi", "eprgi", "sidelobe"}));
  sim->add_option("--trials", trials, "Number of trials");
  sim->add_option("--k", sim_k, "Delay bin");
  sim->add_option("--l", sim_l, "Second delay bin (sidelobe)");
  sim->add_option("--T", sim_t, "EPRGI: slow-time sub-pulse length defining the blind zone");
  sim->add_option("--constellation", sim_const, "qpsk, 16qam, ...");
  sim->add_option("--out-dir", sim_out_dir, "Recipe output directory");

  // recipe
  auto* rec = app.add_subcommand("recipe", "Regenerate figure and table data");
  std::vector<std::string> rec_names;
  RecipeOptions rec_opts;
  std::string rec_dir = "out";
  rec->add_option("names", rec_names, "Recipe names, or 'all'")->required();
  rec->add_option("--seed", rec_opts.seed, "Random seed");
  rec->add_option("--trials", rec_opts.trials, "Monte Carlo trials");
  rec->add_option("--out", rec_dir, "Output directory");
  rec->add_flag("--common-blind", rec_opts.common_blind, "fig7: use the slow-time blind zone for every mask");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "masm: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (gen->parsed()) {
      const auto mask = gen_spec.build(gen_common.seed);
      Sink sink(gen_common.out, out);
      if (gen_common.format == "csv") {
        sink.get() << "index,bit\n";
        for (std::size_t i = 0; i < mask.size(); ++i) sink.get() << i << ',' << (mask[i] ? 1 : 0) << '\n';
      } else {
        sink.get() << mask_to_json(mask).dump(2) << '\n';
      }
    } else if (metrics->parsed()) {
      const auto mask = met_spec.build(met_common.seed);
      const auto c = constellation_by_name(met_const);
      const auto report = glint_report(mask, c.mu4(), c.size(), c_th);
      Sink sink(met_common.out, out);
      if (met_common.format == "csv") {
        sink.get() << "k,expected_mainlobe\n";
        for (std::size_t k = 0; k < report.mainlobe_expectation.size(); ++k)
          sink.get() << k << ',' << report.mainlobe_expectation[k] << '\n';
      } else {
        auto j = to_json(report);
        j["constellation"] = c.name();
        j["mu4"] = c.mu4();
        j["c_th"] = c_th;
        sink.get() << j.dump(2) << '\n';
      }
    } else if (side->parsed()) {
      const auto mask = side_spec.build(side_common.seed);
      Sink sink(side_common.out, out);
      if (side_common.format == "csv") {
        write_matrix_csv(sink.get(), expected_sidelobe_matrix(mask));
      } else {
        const auto c = constellation_by_name(side_const);
        auto j = to_json(sidelobe_report(mask, c.mu4()));
        j["constellation"] = c.name();
        sink.get() << j.dump(2) << '\n';
      }
    } else if (slow->parsed()) {
      const auto stm = expand(slow_spec.build(slow_common.seed), slow_t);
      const auto c = constellation_by_name(slow_const);
      const auto blind = blind_zone(stm.slow_length(), slow_t);
      const EprgiModel model(stm.expanded(), blind, c.mu4());
      const auto a = interpolated_a(stm);
      Sink sink(slow_common.out, out);
      if (slow_common.format == "csv") {
        sink.get() << "k,a,blind,neprgi\n" << std::setprecision(17);
        for (std::size_t k = 1; k < a.size(); ++k)
          sink.get() << k << ',' << a[k] << ',' << (model.is_blind(k) ? 1 : 0) << ',' << model.neprgi(k) << '\n';
      } else {
        nlohmann::json neprgi = nlohmann::json::array();
        neprgi.push_back(nullptr);
        for (std::size_t k = 1; k < a.size(); ++k) neprgi.push_back(finite_or_null(model.neprgi(k)));
        nlohmann::json j{{"expanded", mask_to_json(stm.expanded())},
                         {"L", stm.slow_length()},
                         {"T", slow_t},
                         {"blind_zone", blind},
                         {"a", a},
                         {"neprgi", neprgi},
                         {"constellation", c.name()}};
        sink.get() << j.dump(2) << '\n';
      }
    } else if (opt->parsed()) {
      OptimizationResult r = [&] {
        if (method == "exhaustive") return exhaustive(opt_n, opt_w, budget ? budget : kDefaultExhaustiveBudget);
        if (method == "local") return local_search(opt_n, opt_w, opt_common.seed, restarts);
        return branch_and_bound(opt_n, opt_w, budget ? budget : kDefaultNodeBudget);
      }();
      Sink sink(opt_common.out, out);
      sink.get() << to_json(r).dump(2) << '\n';
    } else if (sim->parsed()) {
      if (!sim_recipe.empty()) {
        static const std::map<std::string, std::string> aliases = {{"fig6", "fig6_slices"},
                                                                   {"fig8", "fig8_constellations"}};
        const auto it = aliases.find(sim_recipe);
        const std::string name = it == aliases.end() ? sim_recipe : it->second;
        if (name != "fig6_slices" && name != "fig8_constellations")
          throw ValidationError("simulate --recipe accepts fig6 or fig8, got '" + sim_recipe + "'");
        RecipeOptions o;
        o.seed = sim_common.seed;
        o.trials = trials;
        o.output_dir = sim_out_dir;
        const auto manifest = run_recipe(name, o);
        Sink sink(sim_common.out, out);
        sink.get() << manifest.dump(2) << '\n';
      } else {
        const auto mask = sim_spec.build(sim_common.seed);
        McConfig cfg{trials, sim_common.seed, constellation_by_name(sim_const), 0};
        McEstimate est{};
        double closed = 0.0;
        if (metric == "irgi") {
          est = estimate_irgi(cfg, mask);
          closed = eargi_payload(mask, cfg.constellation.mu4());
        } else if (metric == "sidelobe") {
          est = estimate_sidelobe(cfg, mask, sim_k, sim_l);
          const auto rm = expected_sidelobe_matrix(mask);
          const double a = static_cast<double>(rm(sim_k, sim_l));
          closed = sim_k == sim_l ? a * a + (cfg.constellation.mu4() - 1.0) * a : a;
        } else {
          const auto blind = sim_t ? structural_blind_zone(mask.size(), sim_t) : std::vector<std::size_t>{0};
          est = estimate_eprgi(cfg, mask, blind, sim_k);
          closed = EprgiModel(mask, blind, cfg.constellation.mu4()).eprgi(sim_k);
        }
        const auto check = three_sigma_check(est, closed);
        Sink sink(sim_common.out, out);
        if (sim_common.format == "csv") {
          write_samples_csv(sink.get(), est);
        } else {
          nlohmann::json j{{"metric", metric},
                           {"mean", est.mean},
                           {"std_error", est.std_error},
                           {"trials", est.trials},
                           {"closed_form", closed},
                           {"within_3_sigma", check.pass},
                           {"degenerate", check.degenerate},
                           {"seed", sim_common.seed},
                           {"constellation", cfg.constellation.name()}};
          sink.get() << j.dump(2) << '\n';
        }
      }
    } else if (rec->parsed()) {
      rec_opts.output_dir = rec_dir;
      std::vector<std::string> names = rec_names;
      if (names.size() == 1 && names.front() == "all") names = recipe_names();
      nlohmann::json all = nlohmann::json::array();
      for (const auto& name : names) all.push_back(run_recipe(name, rec_opts));
      out << all.dump(2) << '\n';
    }
  } catch (const BudgetExceeded& e) {
    err << "masm: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ValidationError& e) {
    err << "masm: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "masm: internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace masm

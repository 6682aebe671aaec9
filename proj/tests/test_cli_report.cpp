#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "masm/cli.hpp"

using namespace masm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  return {code, o.str(), e.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("masm_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("gen-mask") {
  const auto r = cli({"gen-mask", "--family", "singer", "--q", "2", "--pg-n", "3"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("n") == 15);
  CHECK(cli({"gen-mask", "--family", "m-sequence", "--degree", "5", "--format", "csv"}).out.rfind("index,bit\n", 0) == 0);
}

TEST_CASE("validation errors exit with 2") {
  CHECK(cli({"gen-mask", "--family", "contiguous", "--n", "2", "--weight", "1"}).code == kExitValidation);
  CHECK(cli({"gen-mask", "--family", "nope"}).code == kExitValidation);
  CHECK(cli({"metrics", "--family", "bits", "--bits", "0000"}).code == kExitValidation);
  const auto r = cli({"no-such-command"});
  CHECK(r.code == kExitValidation);
}

TEST_CASE("optimizer budget exits with 3") {
  const auto r = cli({"optimize", "--n", "40", "--weight", "20", "--method", "exhaustive", "--budget", "1000"});
  CHECK(r.code == kExitBudget);
  CHECK_FALSE(r.err.empty());
  const auto ok = cli({"optimize", "--n", "7", "--weight", "3"});
  REQUIRE(ok.code == kExitOk);
  CHECK(nlohmann::json::parse(ok.out).at("objective_exact") == "15/7");
}

TEST_CASE("metrics and sidelobe reports") {
  const auto m = cli({"metrics", "--family", "singer", "--q", "2", "--pg-n", "5"});
  REQUIRE(m.code == kExitOk);
  CHECK(nlohmann::json::parse(m.out).at("irgi") == 0.0);
  const auto s = cli({"sidelobe", "--family", "gmw"});
  REQUIRE(s.code == kExitOk);
  CHECK(nlohmann::json::parse(s.out).at("pesl") == 9);
  CHECK(cli({"slow-time", "--family", "m-sequence", "--degree", "3"}).code == kExitValidation);
  CHECK(cli({"slow-time", "--family", "m-sequence", "--degree", "3", "--T", "4"}).code == kExitOk);
}

TEST_CASE("simulate is reproducible byte for byte") {
  const auto a = scratch("a");
  const auto b = scratch("b");
  REQUIRE(cli({"simulate", "--recipe", "fig8", "--trials", "200", "--seed", "4", "--out-dir", a.string()}).code == kExitOk);
  REQUIRE(cli({"simulate", "--recipe", "fig8", "--trials", "200", "--seed", "4", "--out-dir", b.string()}).code == kExitOk);
  const auto fa = a / "fig8_constellations" / "eprgi_constellations.csv";
  REQUIRE(fs::exists(fa));
  CHECK(slurp(fa) == slurp(b / "fig8_constellations" / "eprgi_constellations.csv"));
  CHECK(slurp(a / "fig8_constellations" / "manifest.json") == slurp(b / "fig8_constellations" / "manifest.json"));
  const auto x = cli({"simulate", "--metric", "irgi", "--family", "paley", "--p", "11", "--trials", "50"});
  const auto y = cli({"simulate", "--metric", "irgi", "--family", "paley", "--p", "11", "--trials", "50"});
  CHECK(x.code == kExitOk);
  CHECK(x.out == y.out);
}

TEST_CASE("recipe writes a manifest") {
  const auto d = scratch("recipe");
  REQUIRE(cli({"recipe", "table2_cds", "--out", d.string()}).code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(d / "table2_cds" / "manifest.json"));
  CHECK(j.at("recipe") == "table2_cds");
  CHECK(j.contains("versions"));
  CHECK(fs::exists(d / "table2_cds" / "cds.csv"));
  CHECK(cli({"recipe", "fig99", "--out", d.string()}).code == kExitValidation);
}

TEST_CASE("installed binary reports exit codes") {
  const char* exe = std::getenv("MASM_CLI");
  if (exe == nullptr) return;
  const std::string base = std::string("\"") + exe + "\"";
  auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status(base + " --version") == 0);
  CHECK(status(base + " gen-mask --family contiguous --n 2 --weight 1") == 2);
  CHECK(status(base + " optimize --n 40 --weight 20 --budget 10") == 3);
}

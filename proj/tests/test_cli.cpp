#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "arcparam/cli.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using namespace arcparam::cli;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("arcparam_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Outcome {
  int code;
  json report;
  std::string err;
};

Outcome run_in_process(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str().empty() ? json() : json::parse(out.str()), err.str()};
}

RunConfig config(const std::string& command, const std::string& arcs, const std::string& divisor) {
  RunConfig c;
  c.command = command;
  c.arcs_path = fixtures::data_path(arcs);
  c.divisor_path = fixtures::data_path(divisor);
  return c;
}

int tool(const std::string& args) {
  const std::string cmd = std::string(ARCPARAM_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("verify-onearc") {
  RunConfig c;
  c.command = "verify-onearc";
  const Outcome ok = run_in_process(c);
  CHECK(ok.code == kExitOk);
  REQUIRE(ok.report["runs"].size() == 1);
  CHECK(ok.report["runs"][0]["rho"].get<double>() == doctest::Approx(0.8).epsilon(1e-14));

  // Near the degenerate end the residuals stay below 1e-7.
  c.r_values = {0.999};
  const Outcome stressed = run_in_process(c);
  const json& r = stressed.report["runs"][0];
  for (const char* key : {"first", "second", "matrix_recurrence", "rho", "diagonal_symmetry"})
    CHECK(r["reproducing_identities"][key].get<double>() <= 1e-7);
  CHECK(r["kernel_lemma"]["max_residual"].get<double>() <= 1e-7);
  CHECK(r["kernel_lemma"]["at_zeta0"].get<double>() <= 1e-7);
  CHECK(r["r_corollaries"]["zs_identity"].get<double>() <= 1e-7);
  CHECK(r["r_corollaries"]["m_identity"].get<double>() <= 1e-7);
  c.tol.set("onearc", 1e-7);
  CHECK(run_in_process(c).code == kExitOk);

  c.r_values = {1.5};
  CHECK(run_in_process(c).code == kExitUsage);
}

TEST_CASE("pipeline on the one-arc fixture") {
  RunConfig c = config("pipeline", "onearc_r05.json", "divisor_g0.json");
  const fs::path dir = scratch("g0");
  c.emit = dir.string();
  const Outcome o = run_in_process(c);
  CHECK(o.code == kExitOk);
  CHECK(o.report["pass"].get<bool>());
  for (const auto& a : o.report["opuc"]["alpha"]) {
    const double re = a[0], im = a[1];
    CHECK(std::hypot(re, im) == doctest::Approx(0.6).epsilon(1e-6));
  }
  for (const char* f : {"m_samples.csv", "measure.csv", "alpha.csv", "schur.csv", "alpha.svg"})
    CHECK(fs::exists(dir / f));
  CHECK(slurp(dir / "alpha.csv").rfind("n,re,im\n", 0) == 0);
  CHECK(slurp(dir / "alpha.svg").find("<svg") != std::string::npos);
}

TEST_CASE("pipeline on the two-arc fixture") {
  RunConfig c = config("pipeline", "twoarc.json", "divisor_g1.json");
  c.N = 16;
  const Outcome o = run_in_process(c);
  CHECK(o.code == kExitOk);
  CHECK(o.report["closure"]["residual"].get<double>() <= 1e-6);
  CHECK(o.report["closure"]["in_class"].get<bool>());
  CHECK(o.report["cross_validation"]["max_deviation"].get<double>() <= 1e-5);
}

TEST_CASE("usage errors") {
  CHECK(run_in_process(config("pipeline", "twoarc.json", "divisor_wrong_count.json")).code == kExitUsage);
  CHECK(run_in_process(config("mfunc", "missing.json", "divisor_g0.json")).code == kExitUsage);
  RunConfig c = config("verblunsky", "onearc_r05.json", "divisor_g0.json");
  c.level = 20;
  CHECK(run_in_process(c).code == kExitUsage);
  c.level = 8;
  c.grid = 1000;
  CHECK(run_in_process(c).code == kExitUsage);

  Tolerances t;
  CHECK(fixtures::error_of([&] { t.set("nonsense", 1e-3); }) == arcparam::ErrorCode::InvalidArgument);
  CHECK(fixtures::error_of([&] { t.set("closure", -1.0); }) == arcparam::ErrorCode::InvalidArgument);
}

TEST_CASE("executable exit codes") {
  const std::string arcs = fixtures::data_path("twoarc.json");
  CHECK(tool("") == kExitUsage);
  CHECK(tool("frobnicate") == kExitUsage);
  CHECK(tool("pipeline --arcs " + arcs + " --divisor " + fixtures::data_path("divisor_wrong_count.json")) ==
        kExitUsage);
  CHECK(tool("verify-onearc --tol bogus=1") == kExitUsage);
  CHECK(tool("verify-onearc --r 0.5 0.8") == kExitOk);
  CHECK(tool("verify-onearc --r 0.999") == kExitCheckFailed);
  CHECK(tool("verify-onearc --r 0.999 --tol onearc=1e-7") == kExitOk);
  const fs::path report = scratch("exe") / "report.json";
  CHECK(tool("mfunc --arcs " + arcs + " --divisor " + fixtures::data_path("divisor_g1.json") + " --report " +
             report.string()) == kExitOk);
  CHECK(json::parse(slurp(report))["pass"].get<bool>());
}

TEST_CASE("outputs are deterministic") {
  RunConfig c = config("pipeline", "twoarc.json", "divisor_g1.json");
  c.N = 16;
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  c.emit = a.string();
  const Outcome first = run_in_process(c);
  c.emit = b.string();
  const Outcome second = run_in_process(c);
  for (const char* f : {"m_samples.csv", "measure.csv", "alpha.csv", "schur.csv", "alpha.svg"})
    CHECK(slurp(a / f) == slurp(b / f));
  CHECK(first.report.dump() == second.report.dump());
}

TEST_CASE("single-module commands") {
  const fs::path dir = scratch("modules");
  RunConfig m = config("mfunc", "twoarc.json", "divisor_g1.json");
  m.emit = (dir / "m.csv").string();
  CHECK(run_in_process(m).code == kExitOk);
  CHECK(slurp(dir / "m.csv").rfind("re_z,im_z,re_m,im_m\n", 0) == 0);

  RunConfig ms = config("measure", "twoarc.json", "divisor_g1.json");
  ms.emit = (dir / "mu.csv").string();
  const Outcome mo = run_in_process(ms);
  CHECK(mo.code == kExitOk);
  CHECK(mo.report["measure"]["total_mass"].get<double>() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(slurp(dir / "mu.csv").rfind("kind,angle,weight\n", 0) == 0);

  RunConfig v = config("verblunsky", "onearc_r05.json", "divisor_g0.json");
  v.emit = (dir / "alpha.csv").string();
  v.plot = (dir / "alpha.svg").string();
  CHECK(run_in_process(v).code == kExitOk);
  CHECK(fs::exists(dir / "alpha.svg"));
}

TEST_CASE("sweep") {
  RunConfig c;
  c.command = "sweep";
  c.arcs_path = fixtures::data_path("twoarc.json");
  c.sweep_points = 2;
  c.N = 10;
  const fs::path dir = scratch("sweep");
  c.emit = dir.string();
  const Outcome o = run_in_process(c);
  CHECK(o.code == kExitOk);
  CHECK(o.report["divisors"].get<std::size_t>() == 16);
  CHECK(o.report["min_sequence_separation"].get<double>() > 1e-6);
  CHECK(fs::exists(dir / "alpha_0000.csv"));
  CHECK(fs::exists(dir / "alpha_0015.csv"));
}

TEST_CASE("alpha plot") {
  const std::string svg = alpha_plot_svg({{0.6, 0.0}, {0.0, 0.6}, {-0.3, 0.0}});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(alpha_plot_svg({}).find("</svg>") != std::string::npos);
}

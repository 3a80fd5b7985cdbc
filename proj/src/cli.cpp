#include "arcparam/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "arcparam/arcset.hpp"
#include "arcparam/curve.hpp"
#include "arcparam/error.hpp"
#include "arcparam/hardy0.hpp"
#include "arcparam/measure.hpp"
#include "arcparam/mfunc.hpp"
#include "arcparam/opuc.hpp"
#include "arcparam/schur.hpp"

namespace arcparam::cli {

namespace {

constexpr const char* kModule = "cli";
constexpr std::size_t kCrossValidationTerms = 16;
constexpr double kMomentRadius = 0.5;
constexpr std::size_t kMomentGrid = 1024;
constexpr int kMomentCount = 5;

using nlohmann::json;

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json cjson(const std::vector<cplx>& v) {
  json a = json::array();
  for (const cplx z : v) a.push_back(cjson(z));
  return a;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, kModule, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, kModule, path + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, kModule, "cannot write " + path.string());
  out << content;
}

std::size_t samples_or(const RunConfig& c, std::size_t fallback) {
  return c.samples == 0 ? fallback : c.samples;
}

HyperellipticCurve load_curve(const RunConfig& c) {
  if (!c.arcs_path) throw Error(ErrorCode::InvalidArgument, kModule, "--arcs is required");
  return HyperellipticCurve(arcset_from_json(load_json(*c.arcs_path)));
}

Divisor load_divisor(const RunConfig& c, const HyperellipticCurve& curve) {
  if (!c.divisor_path) throw Error(ErrorCode::InvalidArgument, kModule, "--divisor is required");
  return divisor_validate(curve, divisor_from_json(load_json(*c.divisor_path)));
}

std::string m_samples_csv(const SurfaceFunction& M, std::size_t per_ring) {
  std::ostringstream os;
  os << std::setprecision(17) << "re_z,im_z,re_m,im_m\n";
  for (const double radius : {0.5, 0.9, 1.1, 2.0})
    for (std::size_t k = 0; k < per_ring; ++k) {
      const cplx z = radius * unit(kTwoPi * (static_cast<double>(k) + 0.5) / static_cast<double>(per_ring));
      const cplx m = M.value(z);
      os << z.real() << "," << z.imag() << "," << m.real() << "," << m.imag() << "\n";
    }
  return os.str();
}

std::string measure_csv(const QuadratureMeasure& mu) {
  std::ostringstream os;
  os << std::setprecision(17) << "kind,angle,weight\n";
  for (std::size_t k = 0; k < mu.node_angles.size(); ++k)
    os << "node," << mu.node_angles[k] << "," << mu.weights[k] << "\n";
  for (const auto& a : mu.atoms) os << "atom," << a.angle << "," << a.mass << "\n";
  return os.str();
}

std::string seq_csv(const SchurParamSeq& seq) {
  std::ostringstream os;
  write_csv(os, seq);
  return os.str();
}

std::vector<std::pair<double, double>> re_im(const SchurParamSeq& seq) {
  std::vector<std::pair<double, double>> v;
  for (const cplx a : seq.params) v.emplace_back(a.real(), a.imag());
  return v;
}

struct Built {
  HyperellipticCurve curve;
  Divisor divisor;
  SurfaceFunction M;
  BuildReport report;
};

Built build(const RunConfig& c) {
  HyperellipticCurve curve = load_curve(c);
  Divisor D = load_divisor(c, curve);
  BuildReport rep;
  SurfaceFunction M = build_m(curve, D, LinearSolver::col_piv_qr, &rep);
  return {std::move(curve), std::move(D), std::move(M), rep};
}

json mfunc_section(const Built& b, const Tolerances& tol) {
  const double n0 = std::abs(b.M.value(cplx{0.0, 0.0}) - 1.0);
  const double ninf = std::abs(b.M.value_at_infinity() + 1.0);
  double gap_re = 0.0;
  for (std::size_t j = 0; j < b.curve.arcset().gaps().size(); ++j) {
    const Gap& gap = b.curve.arcset().gaps()[j];
    for (int k = 1; k <= 10; ++k) {
      const double angle = gap.a_angle + gap.length() * k / 11.0;
      if (std::abs(unit(angle) - b.divisor.points[j].t()) < 1e-6) continue;
      gap_re = std::max(gap_re, std::abs(b.M.value(unit(angle)).real()));
    }
  }
  json j;
  j["genus"] = b.curve.genus();
  j["divisor"] = to_json(b.divisor)["divisor"];
  j["p"] = cjson(b.M.p());
  j["q"] = cjson(b.M.q());
  j["d_roots"] = cjson(b.M.d_roots());
  j["condition_number"] = b.report.condition_number;
  j["condition_residual"] = b.report.max_condition_residual;
  j["min_real_part_disk"] = b.report.min_real_part;
  j["normalization_at_0"] = n0;
  j["normalization_at_infinity"] = ninf;
  j["max_abs_real_part_on_gaps"] = gap_re;
  j["pass"] = n0 <= tol.normalization && ninf <= tol.normalization &&
              b.report.min_real_part >= -tol.positivity && gap_re <= tol.gap_imaginarity;
  return j;
}

json measure_section(const SurfaceFunction& M, const QuadratureMeasure& mu, int level, const Tolerances& tol) {
  json atoms = json::array();
  for (const auto& a : mu.atoms) atoms.push_back({{"angle", a.angle}, {"mass", a.mass}});
  // Taylor coefficients of M on |z| = kMomentRadius: M = 1 + 2 Σ_k z^k ∫ t̄^k dσ.
  double moment_err = 0.0;
  json moments = json::array();
  for (int k = 1; k <= kMomentCount; ++k) {
    cplx c{0.0, 0.0};
    for (std::size_t j = 0; j < kMomentGrid; ++j) {
      const cplx z = kMomentRadius * unit(kTwoPi * static_cast<double>(j) / kMomentGrid);
      c += M.value(z) * std::pow(z, -k);
    }
    c /= 2.0 * static_cast<double>(kMomentGrid);
    const double e = std::abs(c - mu.moment(k));
    moment_err = std::max(moment_err, e);
    moments.push_back({{"k", k}, {"measure", cjson(mu.moment(k))}, {"taylor", cjson(c)}, {"error", e}});
  }
  json j;
  j["level"] = level;
  j["nodes"] = mu.node_angles.size();
  j["atoms"] = atoms;
  j["total_mass"] = mu.total_mass;
  j["moments"] = moments;
  j["pass"] = std::abs(mu.total_mass - 1.0) <= tol.total_mass && moment_err <= tol.moments;
  return j;
}

json opuc_section(const MonicOPUC& op, const QuadratureMeasure& mu) {
  json j;
  j["N"] = op.verblunsky.size();
  j["alpha"] = cjson(op.verblunsky.params);
  j["norm_identity_defect"] = op.norm_identity_defect;
  j["orthogonality_defect"] = orthogonality_defect(op, mu);
  return j;
}

void emit_alpha(const RunConfig& c, const SchurParamSeq& alpha, const std::filesystem::path& csv) {
  write_file(csv, seq_csv(alpha));
  if (c.plot) write_file(*c.plot, alpha_plot_svg(re_im(alpha)));
}

}  // namespace

void Tolerances::set(const std::string& name, double value) {
  const std::map<std::string, double*> slots{
      {"onearc", &onearc},
      {"r_normalization", &r_normalization},
      {"normalization", &normalization},
      {"positivity", &positivity},
      {"gap_imaginarity", &gap_imaginarity},
      {"total_mass", &total_mass},
      {"moments", &moments},
      {"cross_validation", &cross_validation},
      {"closure", &closure},
  };
  const auto it = slots.find(name);
  if (it == slots.end()) throw Error(ErrorCode::InvalidArgument, kModule, "unknown tolerance '" + name + "'");
  if (!(value > 0.0)) throw Error(ErrorCode::InvalidArgument, kModule, "tolerance must be positive");
  *it->second = value;
}

nlohmann::json Tolerances::to_json() const {
  return {{"onearc", onearc},
          {"r_normalization", r_normalization},
          {"normalization", normalization},
          {"positivity", positivity},
          {"gap_imaginarity", gap_imaginarity},
          {"total_mass", total_mass},
          {"moments", moments},
          {"cross_validation", cross_validation},
          {"closure", closure}};
}

void validate(const RunConfig& c) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, kModule, what); };
  static const std::vector<std::string> commands{"verify-onearc", "mfunc", "measure",
                                                  "verblunsky",    "pipeline", "sweep"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
    bad("unknown command '" + c.command + "'");
  if (c.N < 1 || c.N > kMaxOpucDegree) bad("N must lie in [1, " + std::to_string(kMaxOpucDegree) + "]");
  if (c.level < 3 || c.level > 12) bad("level must lie in [3, 12]");
  if (!(c.radius > 0.1 && c.radius < 0.9)) bad("radius must lie in (0.1, 0.9)");
  if (c.grid < 256 || (c.grid & (c.grid - 1)) != 0) bad("grid must be a power of two >= 256");
  if (c.r_values.empty()) bad("at least one r value is required");
  for (const double r : c.r_values)
    if (!(r > 0.0 && r < 1.0)) bad("r must lie in (0, 1)");
  if (c.sweep_points < 1) bad("sweep needs at least one point per gap");
  if (c.command != "verify-onearc" && (!c.arcs_path || !c.divisor_path) && c.command != "sweep")
    bad("--arcs and --divisor are required");
  if (c.command == "sweep" && !c.arcs_path) bad("--arcs is required");
}

nlohmann::json cmd_verify_onearc(const RunConfig& c) {
  const std::size_t n = samples_or(c, 500);
  json runs = json::array();
  bool pass = true;
  for (const double r : c.r_values) {
    const auto space = hardy0::OneArcSpace::make(r);
    const auto t1 = hardy0::verify_theorem1(space, n, c.seed);
    const auto lemma = hardy0::verify_kernel_lemma(space, n, c.seed + 1);
    const auto cor = hardy0::verify_r_corollaries(space, n, c.seed + 2);
    const auto norm = hardy0::check_r_normalization(space);
    const bool ok = t1.max_residual() <= c.tol.onearc && lemma.max_residual <= c.tol.onearc &&
                    lemma.at_zeta0 <= c.tol.onearc && cor.max_residual() <= c.tol.onearc &&
                    norm.relative_variation <= c.tol.r_normalization;
    pass = pass && ok;
    runs.push_back({{"r", r},
                    {"a", cjson(t1.a)},
                    {"rho", t1.rho},
                    {"reproducing_identities",
                     {{"first", t1.first_identity},
                      {"second", t1.second_identity},
                      {"matrix_recurrence", t1.matrix_recurrence},
                      {"rho", t1.rho_identity},
                      {"diagonal_symmetry", t1.diagonal_symmetry}}},
                    {"kernel_lemma", {{"max_residual", lemma.max_residual}, {"at_zeta0", lemma.at_zeta0},
                                      {"lambda_b0", lemma.lambda_b0}}},
                    {"r_corollaries", {{"zs_identity", cor.zs_identity}, {"m_identity", cor.m_identity}}},
                    {"r_normalization", norm.relative_variation},
                    {"pass", ok}});
  }
  return {{"command", "verify-onearc"}, {"samples", n}, {"seed", c.seed},
          {"tolerances", c.tol.to_json()}, {"runs", runs}, {"pass", pass}};
}

nlohmann::json cmd_mfunc(const RunConfig& c) {
  const Built b = build(c);
  if (c.emit) write_file(*c.emit, m_samples_csv(b.M, samples_or(c, 64)));
  json j = mfunc_section(b, c.tol);
  const bool pass = j["pass"];
  return {{"command", "mfunc"}, {"tolerances", c.tol.to_json()}, {"mfunc", j}, {"pass", pass}};
}

nlohmann::json cmd_measure(const RunConfig& c) {
  const Built b = build(c);
  const QuadratureMeasure mu = quadrature(b.M, b.divisor, c.level);
  if (c.emit) write_file(*c.emit, measure_csv(mu));
  json j = measure_section(b.M, mu, c.level, c.tol);
  const bool pass = j["pass"];
  return {{"command", "measure"}, {"tolerances", c.tol.to_json()}, {"measure", j}, {"pass", pass}};
}

nlohmann::json cmd_verblunsky(const RunConfig& c) {
  const Built b = build(c);
  const QuadratureMeasure mu = quadrature(b.M, b.divisor, c.level);
  const MonicOPUC op = verblunsky_from_measure(mu, c.N);
  if (c.emit) emit_alpha(c, op.verblunsky, *c.emit);
  else if (c.plot) write_file(*c.plot, alpha_plot_svg(re_im(op.verblunsky)));
  return {{"command", "verblunsky"}, {"level", c.level}, {"opuc", opuc_section(op, mu)}, {"pass", true}};
}

nlohmann::json cmd_pipeline(const RunConfig& c) {
  const Built b = build(c);
  const QuadratureMeasure mu = quadrature(b.M, b.divisor, c.level);
  const MonicOPUC op = verblunsky_from_measure(mu, c.N);
  const SchurParamSeq schur = schur_sequence(b.M.as_fn(), c.N, c.radius, c.grid);

  const std::size_t nx = std::min({c.N, kCrossValidationTerms, schur.size()});
  double xval = 0.0;
  for (std::size_t n = 0; n < nx; ++n) xval = std::max(xval, std::abs(schur[n] - op.verblunsky[n]));

  const ClosureReport closure = schur_step_closure(b.M, cplx{1.0, 0.0});
  const bool closure_ok = closure.fit.residual <= c.tol.closure && closure.fit.in_class;

  if (c.emit) {
    const std::filesystem::path dir(*c.emit);
    write_file(dir / "m_samples.csv", m_samples_csv(b.M, samples_or(c, 64)));
    write_file(dir / "measure.csv", measure_csv(mu));
    write_file(dir / "alpha.csv", seq_csv(op.verblunsky));
    write_file(dir / "schur.csv", seq_csv(schur));
    write_file(dir / "alpha.svg", alpha_plot_svg(re_im(op.verblunsky)));
  }
  if (c.plot) write_file(*c.plot, alpha_plot_svg(re_im(op.verblunsky)));

  json mf = mfunc_section(b, c.tol);
  json ms = measure_section(b.M, mu, c.level, c.tol);
  json closure_json = {{"parameter", cjson(closure.parameter)},
                       {"residual", closure.fit.residual},
                       {"iterations", closure.fit.iterations},
                       {"divisor", to_json(closure.fit.divisor)["divisor"]},
                       {"in_class", closure.fit.in_class},
                       {"pass", closure_ok}};
  const bool pass = mf["pass"].get<bool>() && ms["pass"].get<bool>() && xval <= c.tol.cross_validation &&
                    !schur.terminated && closure_ok;
  return {{"command", "pipeline"},
          {"N", c.N},
          {"level", c.level},
          {"radius", c.radius},
          {"grid", c.grid},
          {"tolerances", c.tol.to_json()},
          {"mfunc", mf},
          {"measure", ms},
          {"opuc", opuc_section(op, mu)},
          {"schur", {{"params", cjson(schur.params)}, {"terminated", schur.terminated},
                     {"max_overshoot", schur.overshoot.empty()
                                           ? 0.0
                                           : *std::max_element(schur.overshoot.begin(), schur.overshoot.end())}}},
          {"cross_validation", {{"terms", nx}, {"max_deviation", xval}, {"pass", xval <= c.tol.cross_validation}}},
          {"closure", closure_json},
          {"pass", pass}};
}

nlohmann::json cmd_sweep(const RunConfig& c) {
  const HyperellipticCurve curve = load_curve(c);
  const auto& gaps = curve.arcset().gaps();
  const std::size_t per_gap = 2 * c.sweep_points;
  std::size_t total = 1;
  for (std::size_t j = 0; j < gaps.size(); ++j) total *= per_gap;

  json entries = json::array();
  std::vector<SchurParamSeq> tables;
  bool pass = true;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<std::pair<double, int>> raw;
    std::size_t rest = idx;
    for (const Gap& gap : gaps) {
      const std::size_t choice = rest % per_gap;
      rest /= per_gap;
      const double frac = static_cast<double>(choice / 2 + 1) / static_cast<double>(c.sweep_points + 1);
      raw.emplace_back(canonical_angle(gap.a_angle + frac * gap.length()), choice % 2 == 0 ? 1 : -1);
    }
    const Divisor D = divisor_validate(curve, raw);
    BuildReport rep;
    const SurfaceFunction M = build_m(curve, D, LinearSolver::col_piv_qr, &rep);
    const QuadratureMeasure mu = quadrature(M, D, c.level);
    const MonicOPUC op = verblunsky_from_measure(mu, c.N);
    const bool ok = std::abs(mu.total_mass - 1.0) <= c.tol.total_mass && rep.min_real_part >= -c.tol.positivity;
    pass = pass && ok;
    if (c.emit) {
      std::ostringstream name;
      name << "alpha_" << std::setw(4) << std::setfill('0') << idx << ".csv";
      write_file(std::filesystem::path(*c.emit) / name.str(), seq_csv(op.verblunsky));
    }
    entries.push_back({{"index", idx},
                       {"divisor", to_json(D)["divisor"]},
                       {"total_mass", mu.total_mass},
                       {"min_real_part_disk", rep.min_real_part},
                       {"alpha", cjson(op.verblunsky.params)},
                       {"pass", ok}});
    tables.push_back(op.verblunsky);
  }
  // Distinct divisors should give distinct parameter sequences.
  double min_sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tables.size(); ++i)
    for (std::size_t k = i + 1; k < tables.size(); ++k) {
      double sep = 0.0;
      for (std::size_t n = 0; n < c.N; ++n) sep = std::max(sep, std::abs(tables[i][n] - tables[k][n]));
      min_sep = std::min(min_sep, sep);
    }
  json sep = tables.size() > 1 ? json(min_sep) : json(nullptr);
  return {{"command", "sweep"},
          {"divisors", total},
          {"N", c.N},
          {"level", c.level},
          {"tolerances", c.tol.to_json()},
          {"entries", entries},
          {"min_sequence_separation", sep},
          {"pass", pass}};
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  json report;
  try {
    validate(c);
    if (c.command == "verify-onearc") report = cmd_verify_onearc(c);
    else if (c.command == "mfunc") report = cmd_mfunc(c);
    else if (c.command == "measure") report = cmd_measure(c);
    else if (c.command == "verblunsky") report = cmd_verblunsky(c);
    else if (c.command == "pipeline") report = cmd_pipeline(c);
    else report = cmd_sweep(c);
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::InvalidArgument:
      case ErrorCode::ParseError:
      case ErrorCode::OverlappingArcs:
      case ErrorCode::DegenerateArc:
      case ErrorCode::AsymmetricArcSet:
      case ErrorCode::PointOneInsideE:
      case ErrorCode::WrongGapCount:
      case ErrorCode::PointOffGap:
        return kExitUsage;
      default:
        return kExitCheckFailed;
    }
  } catch (const std::filesystem::filesystem_error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  const std::string text = report.dump(2) + "\n";
  if (c.report) write_file(*c.report, text);
  else out << text;
  return report["pass"].get<bool>() ? kExitOk : kExitCheckFailed;
}

std::string alpha_plot_svg(const std::vector<std::pair<double, double>>& re_im) {
  constexpr double kWidth = 640, kPanel = 180, kLeft = 50, kRight = 20, kTop = 20, kGapY = 40;
  const double n = std::max<double>(1.0, static_cast<double>(re_im.size()) - 1.0);
  auto x_of = [&](std::size_t k) { return kLeft + (kWidth - kLeft - kRight) * static_cast<double>(k) / n; };
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kTop + 2 * kPanel + kGapY + 30 << "\">\n";
  auto panel = [&](double top, const char* label, double lo, double hi, auto value) {
    os << "<rect x=\"" << kLeft << "\" y=\"" << top << "\" width=\"" << kWidth - kLeft - kRight
       << "\" height=\"" << kPanel << "\" fill=\"none\" stroke=\"#888\"/>\n";
    os << "<text x=\"4\" y=\"" << top + 12 << "\" font-size=\"11\">" << label << "</text>\n";
    os << "<text x=\"4\" y=\"" << top + kPanel << "\" font-size=\"10\">" << lo << "</text>\n";
    os << "<text x=\"4\" y=\"" << top + 26 << "\" font-size=\"10\">" << hi << "</text>\n";
    os << "<polyline fill=\"none\" stroke=\"#1f5fa8\" points=\"";
    for (std::size_t k = 0; k < re_im.size(); ++k) {
      const double v = std::clamp(value(re_im[k]), lo, hi);
      os << x_of(k) << "," << top + kPanel * (hi - v) / (hi - lo) << " ";
    }
    os << "\"/>\n";
  };
  panel(kTop, "|alpha_n|", 0.0, 1.0, [](const auto& p) { return std::hypot(p.first, p.second); });
  panel(kTop + kPanel + kGapY, "arg/pi", -1.0, 1.0,
        [](const auto& p) { return std::atan2(p.second, p.first) / std::numbers::pi; });
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kTop + 2 * kPanel + kGapY + 24
     << "\" font-size=\"11\">n = 0.." << re_im.size() - (re_im.empty() ? 0 : 1) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace arcparam::cli

#include "arcparam/opuc.hpp"

#include <algorithm>
#include <sstream>

#include "arcparam/error.hpp"

namespace arcparam {

namespace {

constexpr const char* kModule = "opuc";
constexpr double kCollapse = 1e-14;

}  // namespace

MonicOPUC verblunsky_from_measure(const QuadratureMeasure& mu, std::size_t N) {
  if (N == 0 || N > kMaxOpucDegree)
    throw Error(ErrorCode::InvalidArgument, kModule, "N must lie in [1, " + std::to_string(kMaxOpucDegree) + "]");
  if (std::abs(mu.total_mass - 1.0) > 1e-6)
    throw Error(ErrorCode::InvalidArgument, kModule, "measure is not normalized");
  const std::size_t support = mu.support_size();
  // Fewer than N + 1 points: Φ_N cannot exist and the recursion reports the collapse.
  if (support > N && support < 2 * N + 1) {
    std::ostringstream os;
    os << support << " nodes cannot resolve degree " << N;
    throw Error(ErrorCode::MeasureTooThin, kModule, os.str());
  }

  std::vector<cplx> t;
  std::vector<double> w;
  for (std::size_t i = 0; i < mu.node_angles.size(); ++i) {
    t.push_back(unit(mu.node_angles[i]));
    w.push_back(mu.weights[i]);
  }
  for (const auto& a : mu.atoms) {
    t.push_back(a.location());
    w.push_back(a.mass);
  }

  MonicOPUC out;
  out.degree = N;
  std::vector<cplx> phi(t.size(), cplx{1.0, 0.0});
  std::vector<cplx> phis = phi;
  std::vector<cplx> c{cplx{1.0, 0.0}};
  out.coeffs.push_back(c);
  double norm2 = 0.0;
  for (const double wi : w) norm2 += wi;
  out.norms2.push_back(norm2);

  for (std::size_t n = 0; n < N; ++n) {
    cplx inner{};  // Σ w conj(zΦ_n) Φ_n^*
    for (std::size_t i = 0; i < t.size(); ++i) inner += w[i] * std::conj(t[i] * phi[i]) * phis[i];
    const cplx alpha = inner / norm2;
    out.verblunsky.params.push_back(alpha);

    double next_norm2 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const cplx zp = t[i] * phi[i];
      phi[i] = zp - std::conj(alpha) * phis[i];
      phis[i] = phis[i] - alpha * zp;
      next_norm2 += w[i] * std::norm(phi[i]);
    }

    // Coefficients: Φ_n^* has the reversed, conjugated coefficients of Φ_n.
    std::vector<cplx> next(c.size() + 1, cplx{});
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= std::conj(alpha) * std::conj(c[c.size() - 1 - k]);
    }
    if (std::abs(alpha + std::conj(next[0])) > 1e-8)
      throw Error(ErrorCode::InvalidArgument, kModule, "alpha_n != -conj(Phi_{n+1}(0))");
    c = std::move(next);
    out.coeffs.push_back(c);

    if (next_norm2 <= kCollapse) {
      std::ostringstream os;
      os << "||Phi_" << n + 1 << "||^2 = " << next_norm2;
      throw Error(ErrorCode::NormCollapse, kModule, os.str());
    }
    const double predicted = (1.0 - std::norm(alpha)) * norm2;
    out.norm_identity_defect = std::max(out.norm_identity_defect, std::abs(next_norm2 - predicted) / next_norm2);
    out.norms2.push_back(next_norm2);
    norm2 = next_norm2;
  }
  return out;
}

double orthogonality_defect(const MonicOPUC& opuc, const QuadratureMeasure& mu) {
  std::vector<cplx> t;
  std::vector<double> w;
  for (std::size_t i = 0; i < mu.node_angles.size(); ++i) {
    t.push_back(unit(mu.node_angles[i]));
    w.push_back(mu.weights[i]);
  }
  for (const auto& a : mu.atoms) {
    t.push_back(a.location());
    w.push_back(a.mass);
  }
  const std::size_t n = opuc.coeffs.size();
  std::vector<std::vector<cplx>> vals(n, std::vector<cplx>(t.size()));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < t.size(); ++i) vals[m][i] = horner(opuc.coeffs[m], t[i]);
  double defect = 0.0;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = m + 1; k < n; ++k) {
      cplx ip{};
      for (std::size_t i = 0; i < t.size(); ++i) ip += w[i] * vals[m][i] * std::conj(vals[k][i]);
      defect = std::max(defect, std::abs(ip) / std::sqrt(opuc.norms2[m] * opuc.norms2[k]));
    }
  return defect;
}

double cross_validate(const AnalyticFn& M, const QuadratureMeasure& mu, std::size_t N) {
  const MonicOPUC opuc = verblunsky_from_measure(mu, N);
  const SchurParamSeq schur = schur_sequence(M, N);
  if (schur.size() < N)
    throw Error(ErrorCode::ExtremalFunction, kModule, "Schur path terminated before N parameters");
  double dev = 0.0;
  for (std::size_t n = 0; n < N; ++n) dev = std::max(dev, std::abs(opuc.verblunsky[n] - schur[n]));
  return dev;
}

double cross_validate(const SurfaceFunction& M, const QuadratureMeasure& mu, std::size_t N) {
  return cross_validate(M.as_fn(), mu, N);
}

}  // namespace arcparam

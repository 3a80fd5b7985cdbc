#include "arcparam/mfunc.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "arcparam/error.hpp"

namespace arcparam {

namespace {

constexpr const char* kModule = "mfunc";
constexpr double kMaxCondition = 1e12;
constexpr double kConditionResidualTol = 1e-10;
constexpr double kPositivityTol = 1e-8;
constexpr double kFitTol = 1e-6;
constexpr std::size_t kFitMaxIterations = 50;
constexpr double kBranchSnap = 1e-8;

using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{cplx{1.0, 0.0}};
  for (const cplx r : roots) {
    std::vector<cplx> next(c.size() + 1, cplx{});
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

// Roots of a monic polynomial (coefficients increasing, leading 1), polished by Newton.
std::vector<cplx> monic_roots(const std::vector<cplx>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<cplx> roots;
  if (n == 1) {
    roots.push_back(-c[0]);
    return roots;
  }
  MatX companion = MatX::Zero(n, n);
  for (std::size_t i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) companion(i, n - 1) = -c[i];
  Eigen::ComplexEigenSolver<MatX> es(companion);
  for (std::size_t i = 0; i < n; ++i) roots.push_back(es.eigenvalues()(i));
  std::vector<cplx> dc(n);
  for (std::size_t k = 1; k <= n; ++k) dc[k - 1] = static_cast<double>(k) * c[k];
  for (auto& r : roots)
    for (int it = 0; it < 3; ++it) {
      const cplx der = horner(dc, r);
      if (std::abs(der) == 0.0) break;
      r -= horner(c, r) / der;
    }
  return roots;
}

VecX solve(const MatX& A, const VecX& b, LinearSolver solver) {
  if (solver == LinearSolver::full_piv_lu) return A.fullPivLu().solve(b);
  return A.colPivHouseholderQr().solve(b);
}

double condition(const MatX& A) {
  Eigen::JacobiSVD<MatX> svd(A);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / smin;
}

std::string divisor_str(const Divisor& D) {
  std::ostringstream os;
  os.precision(17);
  os << "{";
  for (std::size_t j = 0; j < D.points.size(); ++j)
    os << (j ? ", " : "") << "(" << D.points[j].angle << ", " << D.points[j].sheet << ")";
  os << "}";
  return os.str();
}

}  // namespace

SurfaceFunction::SurfaceFunction(HyperellipticCurve curve, std::vector<cplx> p, cplx q,
                                 std::vector<cplx> d_roots, Divisor divisor)
    : curve_(std::move(curve)), p_(std::move(p)), q_(q), d_roots_(std::move(d_roots)), divisor_(std::move(divisor)) {}

cplx SurfaceFunction::d(cplx z) const {
  cplx acc{1.0, 0.0};
  for (const cplx t : d_roots_) acc *= (z - t);
  return acc;
}

cplx SurfaceFunction::p_at(cplx z) const { return horner(p_, z); }

cplx SurfaceFunction::value(cplx z, int sheet) const {
  return (p_at(z) + static_cast<double>(sheet) * q_ * curve_.w(z)) / d(z);
}

cplx SurfaceFunction::value_at_infinity(int sheet) const {
  const std::size_t top = d_roots_.size();
  const cplx lead = top < p_.size() ? p_[top] : cplx{};
  return lead + static_cast<double>(sheet) * q_;
}

cplx SurfaceFunction::value_edge(const EdgePoint& ep, Side side) const {
  const cplx z = curve_.edge_z(ep);
  const std::size_t branch = curve_.edge_branch(ep);
  cplx den{1.0, 0.0};
  for (std::size_t j = 0; j < d_roots_.size(); ++j) {
    const bool same_branch = j < divisor_.points.size() && divisor_.points[j].branch == branch;
    den *= same_branch ? curve_.edge_diff(ep) : (z - d_roots_[j]);
  }
  return (p_at(z) + q_ * curve_.w_edge(ep, side)) / den;
}

AnalyticFn SurfaceFunction::as_fn() const {
  return AnalyticFn(Domain::slit_complement, [self = *this](cplx z) { return self.value(z); });
}

double disk_grid_min_real(const AnalyticFn& M) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const double rad = (i + 1) / 21.0;
    for (int k = 0; k < 20; ++k) m = std::min(m, M(rad * unit(kTwoPi * (k + 0.5) / 20.0)).real());
  }
  return m;
}

SurfaceFunction build_m(const HyperellipticCurve& curve, const Divisor& D, LinearSolver solver,
                        BuildReport* report) {
  const std::size_t g = curve.genus();
  if (D.points.size() != g + 1)
    throw Error(ErrorCode::WrongGapCount, kModule, "divisor size does not match genus + 1");
  const std::size_t np = g + 2;  // p_0 .. p_{g+1}
  const std::size_t n = g + 3;   // plus q

  std::vector<cplx> roots;
  for (const auto& pt : D.points) roots.push_back(pt.branch ? curve.branch_points()[*pt.branch] : pt.t());

  MatX A = MatX::Zero(n, n);
  VecX b = VecX::Zero(n);
  for (std::size_t j = 0; j <= g; ++j) {
    const cplx t = roots[j];
    cplx pw{1.0, 0.0};
    for (std::size_t k = 0; k < np; ++k, pw *= t) A(j, k) = pw;
    // Cancel the pole on the sheet opposite to ε_j; at a branch point only p vanishes.
    if (!D.points[j].branch) A(j, np) = -static_cast<double>(D.points[j].sheet) * curve.w(t);
  }
  cplx d0{1.0, 0.0};
  for (const cplx t : roots) d0 *= -t;
  A(g + 1, 0) = 1.0;
  A(g + 1, np) = curve.w(cplx{0.0, 0.0});
  b(g + 1) = d0;
  A(g + 2, np - 1) = 1.0;
  A(g + 2, np) = 1.0;
  b(g + 2) = -1.0;

  const double cond = condition(A);
  if (!(cond <= kMaxCondition))
    throw Error(ErrorCode::SingularSystem, kModule,
                "condition number " + std::to_string(cond) + " for divisor " + divisor_str(D));
  const VecX x = solve(A, b, solver);
  const double residual = (A * x - b).cwiseAbs().maxCoeff();
  if (residual > kConditionResidualTol)
    throw Error(ErrorCode::SingularSystem, kModule, "condition residual " + std::to_string(residual));

  std::vector<cplx> p(np);
  for (std::size_t k = 0; k < np; ++k) p[k] = x(k);
  SurfaceFunction M(curve, std::move(p), x(np), std::move(roots), D);

  const double min_re = disk_grid_min_real(M.as_fn());
  if (min_re < -kPositivityTol)
    throw Error(ErrorCode::PositivityViolation, kModule,
                "Re M = " + std::to_string(min_re) + " inside the disk for divisor " + divisor_str(D));
  if (report) *report = BuildReport{cond, residual, min_re};
  return M;
}

std::vector<std::pair<cplx, cplx>> sample_rings(const AnalyticFn& M, std::size_t per_ring) {
  std::vector<std::pair<cplx, cplx>> s;
  for (const double rad : {0.5, 2.0})
    for (std::size_t k = 0; k < per_ring; ++k) {
      const cplx z = rad * unit(kTwoPi * (k + 0.25) / static_cast<double>(per_ring));
      s.emplace_back(z, M(z));
    }
  return s;
}

FitResult fit_m(const HyperellipticCurve& curve, const std::vector<std::pair<cplx, cplx>>& samples) {
  const std::size_t g = curve.genus();
  if (samples.size() < 4 * (g + 2))
    throw Error(ErrorCode::InvalidArgument, kModule, "fit_m needs at least 4(g+2) samples");
  const std::size_t nd = g + 1;  // d_0 .. d_g (d is monic of degree g+1)
  const std::size_t np = g + 2;
  const std::size_t n = nd + np + 1;
  const ArcSet& e = curve.arcset();

  std::vector<cplx> w(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) w[i] = curve.w(samples[i].first);

  std::vector<cplx> roots;
  for (const auto& gap : e.gaps()) roots.push_back(unit(gap.mid_angle()));

  std::vector<cplx> p(np);
  cplx q{};
  double residual = std::numeric_limits<double>::infinity();
  std::size_t it = 0;
  for (; it < kFitMaxIterations; ++it) {
    // Linearized model  Σ d_k z^k M − p(z) − q w = −z^{g+1} M, rows weighted by 1/|d_prev M|.
    const std::vector<cplx> d_prev = poly_from_roots(roots);
    MatX A(samples.size(), n);
    VecX b(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto [z, m] = samples[i];
      const double wt = 1.0 / std::max(std::abs(horner(d_prev, z) * m), 1e-300);
      cplx pw{1.0, 0.0};
      for (std::size_t k = 0; k < np; ++k, pw *= z) {
        if (k < nd) A(i, k) = wt * pw * m;
        A(i, nd + k) = -wt * pw;
      }
      A(i, n - 1) = -wt * w[i];
      b(i) = -wt * pw / z * m;  // pw = z^{g+2} here
    }
    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (Eigen::Index c = 0; c < A.cols(); ++c)
      if (scale(c) > 0.0) A.col(c) /= scale(c);
    VecX x = A.colPivHouseholderQr().solve(b);
    for (Eigen::Index c = 0; c < x.size(); ++c)
      if (scale(c) > 0.0) x(c) /= scale(c);

    std::vector<cplx> dc(nd + 1);
    for (std::size_t k = 0; k < nd; ++k) dc[k] = x(k);
    dc[nd] = 1.0;
    for (std::size_t k = 0; k < np; ++k) p[k] = x(nd + k);
    q = x(n - 1);
    std::vector<cplx> next = monic_roots(dc);
    // Keep roots paired with the previous ordering.
    std::vector<cplx> ordered;
    std::vector<bool> used(next.size(), false);
    for (const cplx r : roots) {
      std::size_t best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < next.size(); ++k)
        if (!used[k] && std::abs(next[k] - r) < bd) bd = std::abs(next[k] - r), best = k;
      used[best] = true;
      ordered.push_back(next[best]);
    }
    double shift = 0.0;
    for (std::size_t k = 0; k < roots.size(); ++k) shift = std::max(shift, std::abs(ordered[k] - roots[k]));
    roots = std::move(ordered);

    const std::vector<cplx> dnew = poly_from_roots(roots);
    residual = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto [z, m] = samples[i];
      const cplx model = (horner(p, z) + q * w[i]) / horner(dnew, z);
      residual = std::max(residual, std::abs(model - m) / std::abs(m));
    }
    if (shift < 1e-14 && it > 0) {
      ++it;
      break;
    }
  }
  if (!(residual <= kFitTol))
    throw Error(ErrorCode::NoConvergence, kModule, "fit residual " + std::to_string(residual));

  // Read the divisor off the roots of d.
  FitResult out{SurfaceFunction(curve, p, q, roots, Divisor{}), Divisor{}, residual, 0.0, it, false};
  std::vector<std::pair<double, int>> raw;
  double gap_defect = 0.0;
  for (const cplx t : roots) {
    out.root_circle_defect = std::max(out.root_circle_defect, std::abs(std::abs(t) - 1.0));
    double angle = canonical_angle(std::arg(t));
    int sheet = 1;
    bool snapped = false;
    for (std::size_t j = 0; j < e.gaps().size() && !snapped; ++j) {
      for (const double end : {e.gaps()[j].a_angle, e.gaps()[j].b_angle}) {
        const double dist = std::min(ccw_distance(angle, end), ccw_distance(end, angle));
        if (dist <= kBranchSnap) {
          angle = end;
          snapped = true;
          break;
        }
      }
    }
    if (!snapped) {
      const cplx tt = unit(angle);
      const cplx wt = curve.w(tt);
      const cplx pt = horner(p, tt);
      sheet = std::abs(pt + q * wt) >= std::abs(pt - q * wt) ? 1 : -1;
      if (!e.gap_of(angle)) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& gap : e.gaps())
          best = std::min({best, std::min(ccw_distance(angle, gap.a_angle), ccw_distance(gap.a_angle, angle)),
                           std::min(ccw_distance(angle, gap.b_angle), ccw_distance(gap.b_angle, angle))});
        gap_defect = std::max(gap_defect, best);
      }
    }
    raw.emplace_back(angle, sheet);
  }
  out.in_class = out.root_circle_defect <= kFitTol && gap_defect == 0.0;
  if (out.in_class) {
    try {
      out.divisor = divisor_validate(curve, raw);
    } catch (const Error&) {
      out.in_class = false;
    }
  }
  if (!out.in_class)
    for (const auto& [a, s] : raw) out.divisor.points.push_back(DivisorPoint{a, s, std::nullopt});
  out.fn = SurfaceFunction(curve, p, q, roots, out.divisor);
  return out;
}

ThetaSelection select_theta(const SurfaceFunction& M, cplx zref) {
  for (std::size_t j = 0; j < M.d_roots().size(); ++j)
    if (std::abs(M.d_roots()[j] - zref) <= 1e-12 && M.divisor().points[j].sheet == 1)
      throw Error(ErrorCode::RefIsPole, kModule, "M has a pole at the reference point");
  if (!M.curve().arcset().gaps().front().contains_open(std::arg(zref)))
    throw Error(ErrorCode::RefPointNotInGap, kModule, "reference point is not inside gap 0");
  const cplx v = M.value(zref);
  if (!std::isfinite(std::abs(v)) || std::abs(v) > 1e12)
    throw Error(ErrorCode::RefIsPole, kModule, "M has a pole at the reference point");
  if (std::abs(v.real()) > 1e-6)
    throw Error(ErrorCode::NotImaginaryAtRef, kModule, "Re M(zref) = " + std::to_string(v.real()));
  // cos(θ/2) = i sin(θ/2) v with v = i y  ⇔  cot(θ/2) = −y.
  const double theta = 2.0 * std::atan2(1.0, -v.imag());
  ThetaSelection sel{theta, theta_family(M.as_fn(), theta)};
  for (const double side : {1.0 - 1e-6, 1.0 + 1e-6})
    if (std::abs(sel.m_theta(side * zref)) <= 1e3)
      throw Error(ErrorCode::NoConvergence, kModule, "selected M_theta has no pole at the reference point");
  return sel;
}

StrippedFunction strip_one(const SurfaceFunction& M, cplx tau) {
  if (std::abs(std::abs(tau) - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, kModule, "tau must be unimodular");
  const AnalyticFn s = cayley_caratheodory_to_schur(M.as_fn());
  const cplx a = tau * s(cplx{0.0, 0.0});
  auto next = [s, tau, a](cplx z) {
    const cplx ts = tau * s(z);
    const cplx s1 = (ts - a) / (z * (1.0 - std::conj(a) * ts));
    return (1.0 + z * s1) / (1.0 - z * s1);
  };
  return {a, AnalyticFn(Domain::slit_complement, next)};
}

ClosureReport schur_step_closure(const SurfaceFunction& M, cplx tau) {
  const StrippedFunction st = strip_one(M, tau);
  return {st.parameter, fit_m(M.curve(), sample_rings(st.m_next))};
}

}  // namespace arcparam

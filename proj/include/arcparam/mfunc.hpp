#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "arcparam/curve.hpp"
#include "arcparam/moebius.hpp"

namespace arcparam {

/// (p(z) + sheet · q · w(z)) / d(z) on the double, d monic with one root per gap.
class SurfaceFunction {
 public:
  SurfaceFunction(HyperellipticCurve curve, std::vector<cplx> p, cplx q, std::vector<cplx> d_roots,
                  Divisor divisor);

  const HyperellipticCurve& curve() const { return curve_; }
  const std::vector<cplx>& p() const { return p_; }
  cplx q() const { return q_; }
  const std::vector<cplx>& d_roots() const { return d_roots_; }
  const Divisor& divisor() const { return divisor_; }

  cplx value(cplx z, int sheet = 1) const;
  /// Limit at the point over ∞ on the given sheet.
  cplx value_at_infinity(int sheet = 1) const;
  /// One-sided boundary value on E.
  cplx value_edge(const EdgePoint& p, Side side = Side::inside) const;
  cplx d(cplx z) const;
  cplx p_at(cplx z) const;

  /// Physical-sheet evaluator.
  AnalyticFn as_fn() const;

 private:
  HyperellipticCurve curve_;
  std::vector<cplx> p_;
  cplx q_;
  std::vector<cplx> d_roots_;
  Divisor divisor_;
};

enum class LinearSolver { col_piv_qr, full_piv_lu };

struct BuildReport {
  double condition_number = 0.0;
  double max_condition_residual = 0.0;
  double min_real_part = 0.0;  // over the polar test grid in the unit disk
};

/// M(z, D): poles exactly at D, M(0) = 1, M(∞) = −1 on the physical sheet.
SurfaceFunction build_m(const HyperellipticCurve& curve, const Divisor& D,
                        LinearSolver solver = LinearSolver::col_piv_qr, BuildReport* report = nullptr);

/// Minimum of Re M over a 20 × 20 polar grid of the open unit disk.
double disk_grid_min_real(const AnalyticFn& M);

struct FitResult {
  SurfaceFunction fn;
  Divisor divisor;
  double residual = 0.0;         // max relative deviation on the samples
  double root_circle_defect = 0.0;  // max | |t_j| − 1 |
  std::size_t iterations = 0;
  bool in_class = false;         // every root on a closed gap, one per gap
};

/// Least-squares identification of a sampled function as (p + q w)/d.
FitResult fit_m(const HyperellipticCurve& curve, const std::vector<std::pair<cplx, cplx>>& samples);

/// Standard sample set: two rings |z| = 0.5 and |z| = 2, `per_ring` points each.
std::vector<std::pair<cplx, cplx>> sample_rings(const AnalyticFn& M, std::size_t per_ring = 64);

struct ThetaSelection {
  double theta = 0.0;
  AnalyticFn m_theta;
};

/// The unique θ for which M_θ has a pole at zref ∈ gap 0.
ThetaSelection select_theta(const SurfaceFunction& M, cplx zref);

/// One Schur step applied to τs, where s is the Schur function of M, and
/// mapped back: M₁ = (1 + z s₁)/(1 − z s₁), s₁ = (τs − a)/(z(1 − ā τs)), a = τs(0).
/// M₁ is evaluable on all of Ω.
struct StrippedFunction {
  cplx parameter;
  AnalyticFn m_next;
};
StrippedFunction strip_one(const SurfaceFunction& M, cplx tau);

struct ClosureReport {
  cplx parameter;
  FitResult fit;
};
/// strip_one followed by fit_m on the standard sample rings.
ClosureReport schur_step_closure(const SurfaceFunction& M, cplx tau);

}  // namespace arcparam

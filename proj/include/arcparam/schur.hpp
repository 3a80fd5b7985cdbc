#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "arcparam/complex.hpp"
#include "arcparam/moebius.hpp"

namespace arcparam {

/// Schur (Verblunsky) parameters a₀, a₁, … . A sequence that stopped because
/// the remaining function was extremal carries `terminated = true`.
struct SchurParamSeq {
  std::vector<cplx> params;
  bool terminated = false;
  /// Per-step max(|s_n| − 1, 0) over the sampling grid, when produced by stripping.
  std::vector<double> overshoot;

  std::size_t size() const { return params.size(); }
  const cplx& operator[](std::size_t n) const { return params[n]; }
};

/// CSV with header `n,re,im`.
void write_csv(std::ostream& os, const SchurParamSeq& seq);

/// Samples of a Schur function on the uniform grid of |z| = radius.
class SampledSchurFn {
 public:
  static constexpr std::size_t kDefaultGrid = 1024;
  static constexpr double kDefaultRadius = 0.85;

  SampledSchurFn(double radius, std::vector<cplx> samples);

  static SampledSchurFn sample(const AnalyticFn& f, double radius = kDefaultRadius,
                               std::size_t n_grid = kDefaultGrid);
  static SampledSchurFn constant(cplx c, double radius = kDefaultRadius,
                                 std::size_t n_grid = kDefaultGrid);

  double radius() const { return radius_; }
  std::size_t size() const { return samples_.size(); }
  const std::vector<cplx>& samples() const { return samples_; }
  cplx point(std::size_t k) const;
  /// Value at 0 by the Cauchy mean of the samples.
  cplx mean() const;
  double max_modulus() const;

 private:
  friend std::pair<cplx, SampledSchurFn> schur_strip(const SampledSchurFn& s);
  struct Unchecked {};
  SampledSchurFn(Unchecked, double radius, std::vector<cplx> samples)
      : radius_(radius), samples_(std::move(samples)) {}

  double radius_;
  std::vector<cplx> samples_;
};

/// One step of the Schur algorithm: a = s(0), s_next = (s − a)/(z(1 − ā s)).
std::pair<cplx, SampledSchurFn> schur_strip(const SampledSchurFn& s);

/// Applies s ↦ (a_n + z s)/(1 + ā_n z s) from the last parameter to the first.
SampledSchurFn schur_compose(const SchurParamSeq& params, const SampledSchurFn& tail);
/// Same with the zero tail.
SampledSchurFn schur_compose(const SchurParamSeq& params, double radius = SampledSchurFn::kDefaultRadius,
                             std::size_t n_grid = SampledSchurFn::kDefaultGrid);

/// First N Schur parameters of the Schur function of a normalized
/// Carathéodory function M. Stops early (terminated) on an extremal remainder.
SchurParamSeq schur_sequence(const AnalyticFn& M, std::size_t N,
                             double radius = SampledSchurFn::kDefaultRadius,
                             std::size_t n_grid = SampledSchurFn::kDefaultGrid);

/// Same, starting from samples of the Schur function itself.
SchurParamSeq schur_sequence(SampledSchurFn s, std::size_t N);

}  // namespace arcparam

#pragma once

#include <functional>

#include "arcparam/arcset.hpp"
#include "arcparam/complex.hpp"

namespace arcparam {

/// Where an AnalyticFn may be evaluated.
enum class Domain {
  unit_disk,
  exterior_disk,
  slit_complement,  // Ω = C̄ ∖ E
  lambda_plane,     // image of Ω under the λ-map
};

/// Evaluable handle for a holomorphic function. Copies share the callable;
/// the callable must be pure so concurrent evaluation is safe.
class AnalyticFn {
 public:
  using Fn = std::function<cplx(cplx)>;

  AnalyticFn(Domain domain, Fn fn) : domain_(domain), fn_(std::move(fn)) {}

  cplx operator()(cplx z) const { return fn_(z); }
  Domain domain() const { return domain_; }

  static AnalyticFn constant(cplx c, Domain domain = Domain::unit_disk) {
    return {domain, [c](cplx) { return c; }};
  }

 private:
  Domain domain_;
  Fn fn_;
};

/// z ↦ (az + b)/(cz + d), stored with max |coefficient| = 1.
class MoebiusMap {
 public:
  MoebiusMap(cplx a, cplx b, cplx c, cplx d);

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }

  /// Finite image of a finite point; throws PoleEncountered at the pole.
  cplx operator()(cplx z) const;
  /// True if z is the pole (to relative tolerance `tol`).
  bool is_pole(cplx z, double tol = 1e-12) const;
  /// Image of ∞ (a/c); the map must not fix ∞ (c ≠ 0).
  cplx at_infinity() const;
  /// Residue at the finite pole: (a p + b)/c with p = −d/c.
  cplx residue() const;
  MoebiusMap inverse() const;
  cplx determinant() const { return a_ * d_ - b_ * c_; }

 private:
  cplx a_, b_, c_, d_;
};

/// M(z) = (1 + zτs(z)) / (1 − zτs(z)).
AnalyticFn cayley_schur_to_caratheodory(AnalyticFn s, cplx tau);

/// f(z) = (M(z) − 1) / (z (M(z) + 1)); requires M(0) = 1.
/// Near z = 0 the removable singularity is resolved by a Cauchy integral.
AnalyticFn cayley_caratheodory_to_schur(AnalyticFn M);

/// M_θ = (cos(θ/2) M − i sin(θ/2)) / (−i sin(θ/2) M + cos(θ/2)).
AnalyticFn theta_family(AnalyticFn M, double theta);

/// Scalar form of theta_family.
cplx theta_transform(cplx m, double theta);

/// The Möbius map with a₀ ↦ 1, zref ↦ ∞, b₀ ↦ −1, where (a₀, b₀) is gap 0.
MoebiusMap lambda_map(const ArcSet& e, cplx zref);

}  // namespace arcparam

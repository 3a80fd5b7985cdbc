#pragma once

#include <cstddef>

#include "arcparam/measure.hpp"
#include "arcparam/schur.hpp"

namespace arcparam {

/// Highest degree supported by the monomial-basis recursion.
inline constexpr std::size_t kMaxOpucDegree = 96;

/// Monic orthogonal polynomials Φ_0..Φ_N for a discrete measure.
/// Inner product: ⟨f, g⟩ = Σ w f(node) conj(g(node)).
struct MonicOPUC {
  std::size_t degree = 0;
  std::vector<std::vector<cplx>> coeffs;  // coeffs[n] has n + 1 entries, increasing degree
  std::vector<double> norms2;             // ‖Φ_n‖²
  SchurParamSeq verblunsky;               // α_0..α_{N−1}
  double norm_identity_defect = 0.0;      // max relative |‖Φ_{n+1}‖² − (1 − |α_n|²)‖Φ_n‖²|
};

/// Szegő recursion Φ_{n+1} = zΦ_n − ᾱ_n Φ_n^*, with α_n fixed by ⟨Φ_{n+1}, Φ_n^*⟩ = 0.
MonicOPUC verblunsky_from_measure(const QuadratureMeasure& mu, std::size_t N);

/// max_{m≠n} |⟨Φ_m, Φ_n⟩| / (‖Φ_m‖ ‖Φ_n‖), evaluated from the stored coefficients.
double orthogonality_defect(const MonicOPUC& opuc, const QuadratureMeasure& mu);

/// max_n |α_n − a_n| between the Szegő path on `mu` and the Schur algorithm on M.
double cross_validate(const AnalyticFn& M, const QuadratureMeasure& mu, std::size_t N);
double cross_validate(const SurfaceFunction& M, const QuadratureMeasure& mu, std::size_t N);

}  // namespace arcparam

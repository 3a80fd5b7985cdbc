#pragma once

#include <cstddef>
#include <cstdint>

#include "arcparam/arcset.hpp"
#include "arcparam/complex.hpp"
#include "arcparam/moebius.hpp"

namespace arcparam::hardy0 {

/// One-arc model: Ω = C̄ ∖ E is simply connected, the covering group is
/// trivial and every object is a rational function of the disk variable ζ.
struct OneArcSpace {
  double r = 0.5;
  cplx zeta0;    // i r, the preimage of z = 0
  double theta;  // sin θ = (1 − r²)/(1 + r²)
  cplx b0;       // e^{2iθ}
  cplx a0;       // conj(b0)

  static OneArcSpace make(double r);
  /// E = arc from 2θ to 2π − 2θ.
  ArcSet arcset() const;
};

/// Hardy-space kernel k(ζ, η) = 1 / (1 − ζ η̄).
cplx kernel(cplx zeta, cplx eta);
/// Normalized kernel K(ζ, η) = k(ζ, η) / sqrt(k(η, η)).
cplx normalized_kernel(cplx zeta, cplx eta);

/// u (ζ − center)/(1 − center̄ ζ) with |u| = 1 fixed by a positive value at
/// `normalization_point`.
cplx blaschke(cplx zeta, cplx center, cplx normalization_point);

/// z(ζ) = B(ζ, ζ₀)/B(ζ, ζ̄₀). Throws PoleAtConjZeta0 at ζ = ζ̄₀.
cplx covering_map(const OneArcSpace& space, cplx zeta);
/// z'(ζ).
cplx covering_map_derivative(const OneArcSpace& space, cplx zeta);
/// Preimage of z in the closed unit disk.
cplx covering_inverse(const OneArcSpace& space, cplx z);
/// Preimage of z = ∞, namely ζ̄₀.
cplx covering_inverse_at_infinity(const OneArcSpace& space);

/// s(z) = K(ζ, ζ̄₀)/K(ζ, ζ₀) = (1 − ζ ζ̄₀)/(1 − ζ ζ₀) as a function of z.
AnalyticFn schur_fn_onearc(const OneArcSpace& space);
/// Same in the disk variable.
cplx schur_fn_zeta(const OneArcSpace& space, cplx zeta);

struct Theorem1Report {
  cplx a;
  double rho = 0.0;
  double first_identity = 0.0;   // K(ζ,ζ̄₀) = a K(ζ,ζ₀) + ρ B(ζ,ζ₀) K(ζ,ζ̄₀)
  double second_identity = 0.0;  // K(ζ,ζ₀) = ā K(ζ,ζ̄₀) + ρ B(ζ,ζ̄₀) K(ζ,ζ₀)
  double matrix_recurrence = 0.0;
  double rho_identity = 0.0;     // ρ − B(ζ̄₀, ζ₀) K(ζ̄₀,ζ̄₀)/K(ζ̄₀,ζ̄₀)
  double diagonal_symmetry = 0.0;  // K(ζ₀,ζ₀) − K(ζ̄₀,ζ̄₀)
  double max_residual() const;
};

Theorem1Report verify_theorem1(const OneArcSpace& space, std::size_t samples, std::uint64_t seed = 1);

/// Ingredients of the reproducing-kernel lemma in the trivial-group case.
struct LemmaData {
  MoebiusMap lambda;     // z ↦ λ with a₀ ↦ 1, z(0) ↦ ∞, b₀ ↦ −1
  cplx lambda0;          // λ(ζ₀)
  cplx lambda_b0;        // (λB)(0) > 0
  cplx b_unimodular;     // B(ζ) = u ζ
};

LemmaData lemma_data(const OneArcSpace& space);
/// λ(ζ) = lambda(z(ζ)).
cplx lambda_of_zeta(const OneArcSpace& space, const LemmaData& data, cplx zeta);

struct LemmaReport {
  double max_residual = 0.0;
  double at_zeta0 = 0.0;     // |RHS(ζ₀) − k(ζ₀, ζ₀)|
  double lambda_b0 = 0.0;    // (λB)(0), positive
};

LemmaReport verify_kernel_lemma(const OneArcSpace& space, std::size_t samples, std::uint64_t seed = 2);

/// r(λ) = (λB)(0)/B(ζ(λ)) (the kernel ratios are identically 1 here).
AnalyticFn r_function(const OneArcSpace& space);

/// τ(α) = [B(0,ζ₀) k(ζ₀,0) / (B(0,ζ̄₀) k(0,ζ₀))]⁻¹.
cplx tau_alpha(const OneArcSpace& space);

struct RCorollaryReport {
  double zs_identity = 0.0;    // z s(z) against the r-ratio form
  double m_identity = 0.0;     // M(z; τ(α)) against (r − Re r₀)/(i Im r₀)
  double max_residual() const { return zs_identity > m_identity ? zs_identity : m_identity; }
};

RCorollaryReport verify_r_corollaries(const OneArcSpace& space, std::size_t samples, std::uint64_t seed = 3);

/// (r(λ(z)) − Re r(λ₀)) / (i Im r(λ₀)) as a function of z.
AnalyticFn m_from_r(const OneArcSpace& space);

struct NormalizationReport {
  cplx offsets[3];  // r(λ) − λ at |λ| = 1e2, 1e4, 1e6 along the imaginary axis
  double relative_variation = 0.0;
};

/// Checks r(λ) = λ + O(1): the spread of r(λ) − λ relative to |λ|.
NormalizationReport check_r_normalization(const OneArcSpace& space);

}  // namespace arcparam::hardy0

#include "arcparam/hardy0.hpp"

#include <algorithm>
#include <random>

#include "arcparam/error.hpp"

namespace arcparam::hardy0 {

namespace {

constexpr const char* kModule = "hardy0";

// Uniform points in the disk |ζ| < 0.99.
std::vector<cplx> random_disk_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> pts(n);
  for (auto& p : pts) p = 0.99 * std::sqrt(u(rng)) * unit(kTwoPi * u(rng));
  return pts;
}

// Blaschke-type factor (ζ − x)(1 − ζ x) used by the covering map.
cplx pair_factor(cplx zeta, cplx x) { return (zeta - x) * (1.0 - zeta * x); }
cplx pair_factor_derivative(cplx zeta, cplx x) { return (1.0 - zeta * x) - x * (zeta - x); }

cplx rotation_constant(const OneArcSpace& s) {
  const cplx zb = std::conj(s.zeta0);
  return (1.0 - zb * zb) / (1.0 - s.zeta0 * s.zeta0);
}

}  // namespace

OneArcSpace OneArcSpace::make(double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidArgument, kModule, "r must lie in (0, 1)");
  OneArcSpace s;
  s.r = r;
  s.zeta0 = cplx{0.0, r};
  s.theta = std::asin((1.0 - r * r) / (1.0 + r * r));
  const cplx root = cplx{2.0 * r, 1.0 - r * r} / (1.0 + r * r);
  s.b0 = root * root;
  s.a0 = std::conj(s.b0);
  return s;
}

ArcSet OneArcSpace::arcset() const {
  return ArcSet::build({Arc{2.0 * theta, kTwoPi - 2.0 * theta}});
}

cplx kernel(cplx zeta, cplx eta) { return 1.0 / (1.0 - zeta * std::conj(eta)); }

cplx normalized_kernel(cplx zeta, cplx eta) {
  return kernel(zeta, eta) / std::sqrt(kernel(eta, eta).real());
}

cplx blaschke(cplx zeta, cplx center, cplx normalization_point) {
  auto raw = [center](cplx x) { return (x - center) / (1.0 - std::conj(center) * x); };
  const cplx at_norm = raw(normalization_point);
  if (std::abs(at_norm) == 0.0)
    throw Error(ErrorCode::NormalizationVanishes, kModule, "normalization point equals the center");
  const cplx u = std::conj(at_norm) / std::abs(at_norm);
  return u * raw(zeta);
}

cplx covering_map(const OneArcSpace& space, cplx zeta) {
  const cplx zb = std::conj(space.zeta0);
  const cplx den = pair_factor(zeta, zb);
  if (std::abs(zeta - zb) <= 1e-300)
    throw Error(ErrorCode::PoleAtConjZeta0, kModule, "z(conj zeta0) is the point at infinity");
  return -rotation_constant(space) * pair_factor(zeta, space.zeta0) / den;
}

cplx covering_map_derivative(const OneArcSpace& space, cplx zeta) {
  const cplx zb = std::conj(space.zeta0);
  const cplx n = pair_factor(zeta, space.zeta0);
  const cplx d = pair_factor(zeta, zb);
  const cplx dn = pair_factor_derivative(zeta, space.zeta0);
  const cplx dd = pair_factor_derivative(zeta, zb);
  return -rotation_constant(space) * (dn * d - n * dd) / (d * d);
}

cplx covering_inverse(const OneArcSpace& space, cplx z) {
  // z D(ζ) + c N(ζ) = 0 with N, D the pair factors; the quadratic is
  // palindromic (A = C), so its roots are ζ and 1/ζ.
  const cplx x0 = space.zeta0;
  const cplx xb = std::conj(x0);
  const cplx c = rotation_constant(space);
  const cplx A = -(z * xb + c * x0);
  const cplx B = z * (1.0 + xb * xb) + c * (1.0 + x0 * x0);
  const cplx disc = std::sqrt(B * B - 4.0 * A * A);
  const cplx q1 = -B - disc;
  const cplx q2 = -B + disc;
  const cplx q = std::abs(q1) >= std::abs(q2) ? q1 : q2;
  return 2.0 * A / q;
}

cplx covering_inverse_at_infinity(const OneArcSpace& space) { return std::conj(space.zeta0); }

cplx schur_fn_zeta(const OneArcSpace& space, cplx zeta) {
  return (1.0 - zeta * std::conj(space.zeta0)) / (1.0 - zeta * space.zeta0);
}

AnalyticFn schur_fn_onearc(const OneArcSpace& space) {
  return AnalyticFn(Domain::slit_complement,
                    [space](cplx z) { return schur_fn_zeta(space, covering_inverse(space, z)); });
}

double Theorem1Report::max_residual() const {
  return std::max({first_identity, second_identity, matrix_recurrence, rho_identity, diagonal_symmetry});
}

Theorem1Report verify_theorem1(const OneArcSpace& space, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, kModule, "samples must be positive");
  const cplx z0 = space.zeta0;
  const cplx zb = std::conj(z0);
  Theorem1Report rep;
  rep.a = normalized_kernel(z0, zb) / normalized_kernel(z0, z0);
  rep.rho = std::sqrt(1.0 - std::norm(rep.a));
  const cplx a = rep.a;
  const double rho = rep.rho;

  // The covering group is trivial, so the shifted character coincides with α.
  rep.rho_identity = std::abs(rho - blaschke(zb, z0, zb) * normalized_kernel(zb, zb) / normalized_kernel(zb, zb));
  rep.diagonal_symmetry = std::abs(normalized_kernel(z0, z0) - normalized_kernel(zb, zb));

  for (const cplx zeta : random_disk_points(samples, seed)) {
    const cplx k0 = normalized_kernel(zeta, z0);
    const cplx kb = normalized_kernel(zeta, zb);
    const cplx b_at_z0 = blaschke(zeta, z0, zb);
    const cplx b_at_zb = blaschke(zeta, zb, z0);
    rep.first_identity = std::max(rep.first_identity, std::abs(kb - (a * k0 + rho * b_at_z0 * kb)));
    rep.second_identity =
        std::max(rep.second_identity, std::abs(k0 - (std::conj(a) * kb + rho * b_at_zb * k0)));

    // B(ζ,ζ₀) [K(ζ,ζ₀), −K(ζ,ζ̄₀)] = [K(ζ,ζ₀), −K(ζ,ζ̄₀)] (1/ρ) [[1, a], [ā, 1]] diag(z, 1)
    const cplx z = covering_map(space, zeta);
    const cplx v1 = k0;
    const cplx v2 = -kb;
    const cplx rhs1 = (v1 + v2 * std::conj(a)) * z / rho;
    const cplx rhs2 = (v1 * a + v2) / rho;
    const double res = std::max(std::abs(b_at_z0 * v1 - rhs1), std::abs(b_at_z0 * v2 - rhs2));
    rep.matrix_recurrence = std::max(rep.matrix_recurrence, res);
  }
  return rep;
}

LemmaData lemma_data(const OneArcSpace& space) {
  const cplx z_at_0 = covering_map(space, cplx{0.0, 0.0});
  const MoebiusMap lam = lambda_map(space.arcset(), z_at_0);
  // λ(ζ) ≈ Res / (z'(0) ζ) near ζ = 0.
  const cplx raw = lam.residue() / covering_map_derivative(space, cplx{0.0, 0.0});
  const cplx u = std::conj(raw) / std::abs(raw);
  return LemmaData{lam, lam(cplx{0.0, 0.0}), cplx{std::abs(raw), 0.0}, u};
}

cplx lambda_of_zeta(const OneArcSpace& space, const LemmaData& data, cplx zeta) {
  return data.lambda(covering_map(space, zeta));
}

namespace {

// Right-hand side of the kernel lemma with trivial characters (k^α = k^{αμ₀}).
cplx lemma_rhs(const OneArcSpace& space, const LemmaData& data, cplx zeta) {
  const cplx z0 = space.zeta0;
  const cplx zero{0.0, 0.0};
  auto B = [&](cplx x) { return data.b_unimodular * x; };
  auto k_at_0 = [&](cplx x) { return kernel(x, zero); };  // k^α(ζ) = k^α(ζ, 0)
  const cplx first = std::conj(k_at_0(z0)) * k_at_0(zeta) / (B(zeta) * k_at_0(zero));
  const cplx second = std::conj(k_at_0(z0) / (B(z0) * k_at_0(zero))) * k_at_0(zeta);
  const cplx lam = lambda_of_zeta(space, data, zeta);
  return data.lambda_b0 * (first - second) / (lam - std::conj(data.lambda0));
}

}  // namespace

LemmaReport verify_kernel_lemma(const OneArcSpace& space, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, kModule, "samples must be positive");
  const LemmaData data = lemma_data(space);
  LemmaReport rep;
  rep.lambda_b0 = data.lambda_b0.real();
  rep.at_zeta0 = std::abs(lemma_rhs(space, data, space.zeta0) - kernel(space.zeta0, space.zeta0));
  for (const cplx zeta : random_disk_points(samples, seed))
    rep.max_residual =
        std::max(rep.max_residual, std::abs(kernel(zeta, space.zeta0) - lemma_rhs(space, data, zeta)));
  return rep;
}

namespace {

cplx r_of_zeta(const LemmaData& data, cplx zeta) {
  const cplx zero{0.0, 0.0};
  const cplx k = kernel(zero, zero);
  return data.lambda_b0 / (data.b_unimodular * zeta) * (k / k) * (kernel(zeta, zero) / kernel(zeta, zero));
}

cplx zeta_of_lambda(const OneArcSpace& space, const LemmaData& data, cplx lam) {
  const MoebiusMap inv = data.lambda.inverse();
  if (inv.is_pole(lam)) return covering_inverse_at_infinity(space);
  return covering_inverse(space, inv(lam));
}

}  // namespace

AnalyticFn r_function(const OneArcSpace& space) {
  const LemmaData data = lemma_data(space);
  return AnalyticFn(Domain::lambda_plane,
                    [space, data](cplx lam) { return r_of_zeta(data, zeta_of_lambda(space, data, lam)); });
}

cplx tau_alpha(const OneArcSpace& space) {
  const cplx z0 = space.zeta0;
  const cplx zb = std::conj(z0);
  const cplx zero{0.0, 0.0};
  const cplx c = blaschke(zero, z0, zb) * kernel(z0, zero) / (blaschke(zero, zb, z0) * kernel(zero, z0));
  return 1.0 / c;
}

RCorollaryReport verify_r_corollaries(const OneArcSpace& space, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, kModule, "samples must be positive");
  const LemmaData data = lemma_data(space);
  const AnalyticFn r = r_function(space);
  const cplx z0 = space.zeta0;
  const cplx zb = std::conj(z0);
  const cplx zero{0.0, 0.0};
  const cplx r0 = r(data.lambda0);
  const cplx tau = tau_alpha(space);
  const cplx rotation = blaschke(zero, z0, zb) / blaschke(zero, zb, z0);
  auto B = [&](cplx x) { return data.b_unimodular * x; };
  auto k_at_0 = [&](cplx x) { return kernel(x, zero); };

  RCorollaryReport rep;
  for (const cplx zeta : random_disk_points(samples, seed)) {
    const cplx z = covering_map(space, zeta);
    const cplx lam = lambda_of_zeta(space, data, zeta);
    const cplx zs = z * schur_fn_zeta(space, zeta);

    const cplx kernel_form =
        rotation * (k_at_0(z0) * k_at_0(zeta) / B(zeta) - k_at_0(z0) / B(z0) * k_at_0(zeta)) /
        (std::conj(k_at_0(z0)) * k_at_0(zeta) / B(zeta) - std::conj(k_at_0(z0) / B(z0)) * k_at_0(zeta));
    const cplx rl = r(lam);
    const cplx r_form = (1.0 / tau) * (rl - r0) / (rl - std::conj(r0));
    rep.zs_identity = std::max({rep.zs_identity, std::abs(zs - kernel_form), std::abs(zs - r_form)});

    const cplx u = tau * zs;
    const cplx m_cayley = (1.0 + u) / (1.0 - u);
    const cplx m_r = (rl - r0.real()) / (kI * r0.imag());
    rep.m_identity = std::max(rep.m_identity, std::abs(m_cayley - m_r));
  }
  return rep;
}

AnalyticFn m_from_r(const OneArcSpace& space) {
  const LemmaData data = lemma_data(space);
  const cplx r0 = r_of_zeta(data, space.zeta0);
  return AnalyticFn(Domain::slit_complement, [space, data, r0](cplx z) {
    const cplx zeta = covering_inverse(space, z);
    const cplx rl = r_of_zeta(data, zeta);
    return (rl - r0.real()) / (kI * r0.imag());
  });
}

NormalizationReport check_r_normalization(const OneArcSpace& space) {
  const AnalyticFn r = r_function(space);
  NormalizationReport rep;
  const double mags[3] = {1e2, 1e4, 1e6};
  for (int k = 0; k < 3; ++k) {
    const cplx lam{0.0, mags[k]};
    rep.offsets[k] = r(lam) - lam;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      rep.relative_variation =
          std::max(rep.relative_variation, std::abs(rep.offsets[i] - rep.offsets[j]) / std::max(mags[i], mags[j]));
  return rep;
}

}  // namespace arcparam::hardy0

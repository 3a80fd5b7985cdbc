#include "arcparam/moebius.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "arcparam/error.hpp"

namespace arcparam {

namespace {

constexpr const char* kModule = "moebius";

std::string point_str(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

[[noreturn]] void pole_at(cplx z) {
  throw Error(ErrorCode::PoleEncountered, kModule, "pole at z = " + point_str(z));
}

constexpr double kSchurSmallZ = 1e-4;
constexpr double kSchurCauchyRadius = 1e-2;
constexpr int kSchurCauchyPoints = 16;

}  // namespace

MoebiusMap::MoebiusMap(cplx a, cplx b, cplx c, cplx d) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (scale == 0.0) throw Error(ErrorCode::InvalidArgument, kModule, "all coefficients vanish");
  a_ = a / scale;
  b_ = b / scale;
  c_ = c / scale;
  d_ = d / scale;
  if (std::abs(determinant()) <= 1e-14)
    throw Error(ErrorCode::InvalidArgument, kModule, "degenerate Moebius map (ad - bc = 0)");
}

bool MoebiusMap::is_pole(cplx z, double tol) const {
  return std::abs(c_ * z + d_) <= tol * std::max(1.0, std::abs(c_ * z) + std::abs(d_));
}

cplx MoebiusMap::operator()(cplx z) const {
  const cplx den = c_ * z + d_;
  if (den == cplx{}) pole_at(z);
  return (a_ * z + b_) / den;
}

cplx MoebiusMap::at_infinity() const {
  if (c_ == cplx{}) throw Error(ErrorCode::PoleEncountered, kModule, "map fixes infinity");
  return a_ / c_;
}

cplx MoebiusMap::residue() const {
  if (c_ == cplx{}) throw Error(ErrorCode::InvalidArgument, kModule, "map has no finite pole");
  const cplx p = -d_ / c_;
  return (a_ * p + b_) / c_;
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }

AnalyticFn cayley_schur_to_caratheodory(AnalyticFn s, cplx tau) {
  return AnalyticFn(s.domain(), [s, tau](cplx z) {
    const cplx u = z * tau * s(z);
    const cplx den = 1.0 - u;
    if (std::abs(den) <= 1e-15 * (1.0 + std::abs(u))) pole_at(z);
    return (1.0 + u) / den;
  });
}

AnalyticFn cayley_caratheodory_to_schur(AnalyticFn M) {
  const cplx m0 = M(cplx{0.0, 0.0});
  if (std::abs(m0 - 1.0) > 1e-10)
    throw Error(ErrorCode::NotNormalized, kModule, "M(0) = " + point_str(m0) + ", expected 1");

  auto direct = [M](cplx z) {
    const cplx m = M(z);
    const cplx den = z * (m + 1.0);
    if (std::abs(m + 1.0) <= 1e-15 * (1.0 + std::abs(m))) pole_at(z);
    return (m - 1.0) / den;
  };
  return AnalyticFn(M.domain(), [direct](cplx z) {
    if (std::abs(z) >= kSchurSmallZ) return direct(z);
    // f(z) = (1/n) Σ f(ζ_k) ζ_k / (ζ_k − z) on |ζ| = kSchurCauchyRadius.
    cplx acc{0.0, 0.0};
    for (int k = 0; k < kSchurCauchyPoints; ++k) {
      const cplx zeta = kSchurCauchyRadius * unit(kTwoPi * k / kSchurCauchyPoints);
      acc += direct(zeta) * zeta / (zeta - z);
    }
    return acc / static_cast<double>(kSchurCauchyPoints);
  });
}

cplx theta_transform(cplx m, double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const cplx num = c * m - kI * s;
  const cplx den = -kI * s * m + c;
  if (std::abs(den) <= 1e-15 * (std::abs(m) + 1.0))
    throw Error(ErrorCode::PoleEncountered, kModule, "theta family denominator vanishes");
  return num / den;
}

AnalyticFn theta_family(AnalyticFn M, double theta) {
  if (!(theta >= 0.0 && theta < kTwoPi))
    throw Error(ErrorCode::InvalidArgument, kModule, "theta must lie in [0, 2pi)");
  return AnalyticFn(M.domain(), [M, theta](cplx z) {
    try {
      return theta_transform(M(z), theta);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PoleEncountered) pole_at(z);
      throw;
    }
  });
}

MoebiusMap lambda_map(const ArcSet& e, cplx zref) {
  const Gap& g0 = e.gaps().front();
  const double angle = std::arg(zref);
  if (std::abs(std::abs(zref) - 1.0) > 1e-12 || !g0.contains_open(angle))
    throw Error(ErrorCode::RefPointNotInGap, kModule,
                "reference point " + point_str(zref) + " is not strictly inside gap 0");
  const cplx z1 = g0.a();
  const cplx z2 = zref;
  const cplx z3 = g0.b();
  // C(z) = (z − z1)(z3 − z2) / ((z − z2)(z3 − z1)) sends z1, z2, z3 to 0, ∞, 1;
  // λ = 1 − 2C.
  const cplx den_scale = z3 - z1;
  const cplx num_scale = z3 - z2;
  const cplx a = den_scale - 2.0 * num_scale;
  const cplx b = -z2 * den_scale + 2.0 * z1 * num_scale;
  const cplx c = den_scale;
  const cplx d = -z2 * den_scale;
  MoebiusMap lam(a, b, c, d);
  // Three points fix the map; with a₀ → zref → b₀ counterclockwise the disk
  // lands in the upper half-plane.
  if (lam(cplx{0.0, 0.0}).imag() < 0.0)
    throw Error(ErrorCode::InvalidArgument, kModule, "lambda map orientation check failed");
  return lam;
}

}  // namespace arcparam

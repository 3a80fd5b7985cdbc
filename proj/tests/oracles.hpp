#pragma once

// Reference computations used by the tests. They deliberately avoid the
// library's algorithms: brute-force continuation, dense linear algebra,
// finite differences and plain multi-node rules.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

using cplx = std::complex<double>;

/// √(∏ (z − e_k)) continued along a path from x = +1e4 (where it is ≈ x^{n/2})
/// to z. Inside the disk the path enters through the point 1, which must lie
/// off E; outside it stays on |ζ| = |z| and the real axis.
inline cplx w_continuation(const std::vector<cplx>& branch, cplx z, int steps_per_leg = 4000) {
  auto P = [&](cplx x) {
    cplx v{1.0, 0.0};
    for (const cplx e : branch) v *= (x - e);
    return v;
  };
  std::vector<cplx> path;
  auto leg = [&](cplx from, cplx to) {
    for (int k = 1; k <= steps_per_leg; ++k) path.push_back(from + (to - from) * (double(k) / steps_per_leg));
  };
  auto arc = [&](double radius, double from, double to) {
    for (int k = 1; k <= steps_per_leg; ++k) path.push_back(std::polar(radius, from + (to - from) * k / steps_per_leg));
  };
  const cplx start{1e4, 0.0};
  if (std::abs(z) < 1.0) {
    leg(start, 2.0);
    leg(2.0, 0.5);
    leg(0.5, z);
  } else {
    const double R = std::abs(z);
    leg(start, R);
    arc(R, 0.0, std::arg(z));
  }
  cplx cur = std::sqrt(P(start));
  if (cur.real() < 0) cur = -cur;
  for (const cplx x : path) {
    cplx nxt = std::sqrt(P(x));
    if (std::abs(nxt - cur) > std::abs(nxt + cur)) nxt = -nxt;
    cur = nxt;
  }
  return cur;
}

/// α_0..α_{N−1} from the moments c_m = ∫ t̄^m dσ by solving the normal
/// equations of each monic Φ_n densely.
inline std::vector<cplx> verblunsky_from_moments(const std::function<cplx(int)>& moment, int N) {
  // ⟨z^k, z^j⟩ = ∫ t^k t̄^j dσ = c_{j−k}, c_{−m} = conj(c_m).
  auto gram = [&](int k, int j) {
    const int m = j - k;
    return m >= 0 ? moment(m) : std::conj(moment(-m));
  };
  std::vector<cplx> alpha;
  for (int n = 0; n < N; ++n) {
    const int deg = n + 1;
    Eigen::MatrixXcd G(deg, deg);
    Eigen::VectorXcd rhs(deg);
    // Φ = z^deg + Σ_k b_k z^k, ⟨Φ, z^j⟩ = 0 for j < deg.
    for (int j = 0; j < deg; ++j) {
      for (int k = 0; k < deg; ++k) G(j, k) = gram(k, j);
      rhs(j) = -gram(deg, j);
    }
    const Eigen::VectorXcd b = G.fullPivLu().solve(rhs);
    alpha.push_back(-std::conj(b(0)));
  }
  return alpha;
}

/// Central finite difference f'(z) with step h.
inline cplx derivative(const std::function<cplx(cplx)>& f, cplx z, double h = 1e-5) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

/// Taylor coefficient a_k of f at 0 from the trapezoid rule on |z| = radius.
inline cplx taylor(const std::function<cplx(cplx)>& f, int k, double radius = 0.5, int n = 2048) {
  cplx acc{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const cplx z = std::polar(radius, 2.0 * 3.14159265358979323846 * j / n);
    acc += f(z) * std::pow(z, -k);
  }
  return acc / double(n);
}

/// ∫_a^b f(φ) dφ for f with square-root type endpoint behaviour, via
/// φ = a + (b − a)(1 − cos u)/2 and the midpoint rule in u.
inline double endpoint_integral(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double pi = 3.14159265358979323846;
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double u = pi * (k + 0.5) / n;
    acc += f(a + 0.5 * (b - a) * (1.0 - std::cos(u))) * 0.5 * (b - a) * std::sin(u);
  }
  return acc * pi / n;
}

}  // namespace oracles

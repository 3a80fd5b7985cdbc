#include <doctest.h>

#include <cmath>

#include "arcparam/opuc.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace arcparam;
using fixtures::error_of;

namespace {

struct Built {
  SurfaceFunction M;
  Divisor D;
  QuadratureMeasure mu;
};

Built build(const ArcSet& e, const std::vector<std::pair<double, int>>& raw, int level = 8) {
  const HyperellipticCurve c(e);
  Divisor D = divisor_validate(c, raw);
  SurfaceFunction M = build_m(c, D);
  QuadratureMeasure mu = quadrature(M, D, level);
  return {M, D, mu};
}

Built g0() { return build(fixtures::onearc(0.5), {{0.0, 1}}); }
Built g1() {
  const HyperellipticCurve c(fixtures::twoarc());
  return build(fixtures::twoarc(), fixtures::midgap(c));
}

}  // namespace

TEST_CASE("Lebesgue measure has vanishing coefficients") {
  const MonicOPUC op = verblunsky_from_measure(QuadratureMeasure::uniform(256), 20);
  REQUIRE(op.verblunsky.size() == 20);
  for (const cplx a : op.verblunsky.params) CHECK(std::abs(a) < 1e-14);
}

TEST_CASE("degenerate measures") {
  CHECK(error_of([] { verblunsky_from_measure(QuadratureMeasure::discrete({Atom{0.0, 1.0}}), 1); }) ==
        ErrorCode::NormCollapse);
  // Enough support points but all mass on one of them.
  const QuadratureMeasure one = QuadratureMeasure::discrete({Atom{0.0, 1.0}, Atom{1.0, 0.0}, Atom{2.0, 0.0}});
  try {
    verblunsky_from_measure(one, 1);
    FAIL("expected NormCollapse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NormCollapse);
    CHECK(std::string(e.what()).find("Phi_1") != std::string::npos);
  }
  CHECK(error_of([] { verblunsky_from_measure(QuadratureMeasure::uniform(30), 20); }) == ErrorCode::MeasureTooThin);
}

TEST_CASE("one-arc fixture has constant coefficients of modulus 0.6") {
  const Built b = g0();
  const MonicOPUC op = verblunsky_from_measure(b.mu, 20);
  for (const cplx a : op.verblunsky.params) {
    CHECK(std::abs(std::abs(a) - 0.6) <= 1e-6);
    CHECK(std::abs(a - op.verblunsky.params[0]) <= 1e-6);
  }
}

TEST_CASE("agrees with dense normal equations") {
  for (const Built& b : {g0(), g1(), build(fixtures::threearc(), {{0.1, 1}, {2.2, -1}, {4.0, 1}})}) {
    const MonicOPUC op = verblunsky_from_measure(b.mu, 12);
    const auto ref = oracles::verblunsky_from_moments([&](int m) { return b.mu.moment(m); }, 12);
    for (std::size_t n = 0; n < 12; ++n) CHECK(std::abs(op.verblunsky.params[n] - ref[n]) <= 1e-8);
  }
}

TEST_CASE("norm identity, orthogonality and the constant term") {
  for (const Built& b : {g0(), g1(), build(fixtures::twoarc_wide(), {{0.05, -1}, {3.0, 1}})}) {
    const MonicOPUC op = verblunsky_from_measure(b.mu, 20);
    CHECK(op.norm_identity_defect <= 1e-8);
    CHECK(orthogonality_defect(op, b.mu) <= 1e-8);
    for (std::size_t n = 0; n < 20; ++n) {
      CHECK(std::abs(op.verblunsky.params[n]) < 1.0);
      CHECK(std::abs(op.verblunsky.params[n] + std::conj(op.coeffs[n + 1][0])) <= 1e-8);
      const double ratio = op.norms2[n + 1] / op.norms2[n];
      CHECK(std::abs(ratio - (1.0 - std::norm(op.verblunsky.params[n]))) <= 1e-8);
    }
  }
}

TEST_CASE("Szego and Schur paths agree") {
  const Built a = g0();
  CHECK(cross_validate(a.M, a.mu, 15) <= 1e-6);
  const Built b = g1();
  CHECK(cross_validate(b.M, b.mu, 15) <= 1e-5);
}

TEST_CASE("rotating the Schur function rotates the coefficients") {
  const Built b = g0();
  const AnalyticFn s = cayley_caratheodory_to_schur(b.M.as_fn());
  const cplx tau{0.0, 1.0};
  const AnalyticFn rotated = cayley_schur_to_caratheodory(s, tau);
  const HyperellipticCurve c(fixtures::onearc(0.5));
  const FitResult fit = fit_m(c, sample_rings(rotated));
  REQUIRE(fit.in_class);
  const QuadratureMeasure mu = quadrature(fit.fn, fit.divisor, 8);
  const MonicOPUC before = verblunsky_from_measure(b.mu, 15);
  const MonicOPUC after = verblunsky_from_measure(mu, 15);
  double worst = 0.0;
  for (std::size_t n = 0; n < 15; ++n)
    worst = std::max(worst, std::abs(after.verblunsky.params[n] - tau * before.verblunsky.params[n]));
  CHECK(worst <= 1e-6);
}

TEST_CASE("two-arc coefficients recur") {
  const HyperellipticCurve c(fixtures::twoarc_wide());
  for (const auto& raw : fixtures::divisor_sweep(c, 3, 61)) {
    const Built b = build(fixtures::twoarc_wide(), raw);
    const MonicOPUC op = verblunsky_from_measure(b.mu, 81);
    const auto& a = op.verblunsky.params;
    double best = 1e300, spread = 0.0;
    for (std::size_t k = 1; k <= 40; ++k) {
      double worst = 0.0;
      for (std::size_t n = 0; n <= 40; ++n) worst = std::max(worst, std::abs(a[n + k] - a[n]));
      best = std::min(best, worst);
    }
    for (const cplx x : a) spread = std::max(spread, std::abs(x - a[0]));
    CHECK(best <= 0.1);
    CHECK(spread > 0.01);
  }
}

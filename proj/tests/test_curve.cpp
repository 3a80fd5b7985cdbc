#include <doctest.h>

#include <cmath>
#include <random>

#include "arcparam/curve.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace arcparam;
using fixtures::error_of;

namespace {

std::vector<ArcSet> all_fixtures() {
  return {fixtures::onearc(0.5), fixtures::twoarc(), fixtures::twoarc_wide(), fixtures::threearc()};
}

std::vector<cplx> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rad(0.05, 3.0), ang(0.0, kTwoPi);
  std::vector<cplx> out;
  while (out.size() < n) {
    const double r = rad(rng);
    if (std::abs(r - 1.0) < 0.02) continue;
    out.push_back(std::polar(r, ang(rng)));
  }
  return out;
}

}  // namespace

TEST_CASE("w squares to the branch polynomial") {
  for (const ArcSet& e : all_fixtures()) {
    const HyperellipticCurve c(e);
    double worst = 0.0;
    for (const cplx z : random_points(100, 4)) {
      const cplx p = c.branch_polynomial(z);
      const cplx w = c.w(z);
      worst = std::max(worst, std::abs(w * w - p) / std::abs(p));
    }
    CHECK(worst <= 1e-13);
  }
  // One-arc model with its explicit endpoints.
  const HyperellipticCurve c(fixtures::onearc(0.5));
  const cplx a0{0.28, -0.96}, b0{0.28, 0.96};
  for (const cplx z : random_points(100, 5)) {
    const cplx p = (z - a0) * (z - b0);
    CHECK(std::abs(c.w(z) * c.w(z) - p) <= 1e-13 * std::abs(p));
  }
}

TEST_CASE("w is positive at large real x") {
  for (const ArcSet& e : all_fixtures()) {
    const HyperellipticCurve c(e);
    const cplx w = c.w(1e6);
    CHECK(w.real() > 0.0);
    CHECK(std::abs(w.imag()) <= 1e-12 * std::abs(w));
    CHECK(std::abs(w / std::pow(1e6, double(c.genus() + 1)) - 1.0) < 1e-5);
  }
}

TEST_CASE("w is continuous across the gaps, literal" * doctest::may_fail()) {
  const double delta = 1e-7;
  for (const ArcSet& e : all_fixtures()) {
    const HyperellipticCurve c(e);
    const Gap& g = e.gaps().front();
    const cplx t = unit(g.mid_angle());
    const cplx inner = c.w((1.0 - delta) * t), outer = c.w((1.0 + delta) * t);
    CHECK(std::abs(inner - outer) <= 1e-9 * std::abs(inner));
  }
}

TEST_CASE("w is continuous across the gaps") {
  // The radial difference is 2δ t w'(t) + O(δ³) for an analytic w, and about
  // 2|w| across a cut. w' = w/2 · Σ 1/(z − e_k).
  const double delta = 1e-7;
  for (const ArcSet& e : all_fixtures()) {
    const HyperellipticCurve c(e);
    for (const Gap& g : e.gaps()) {
      for (const double u : {0.1, 0.5, 0.9}) {
        const cplx t = unit(g.a_angle + u * g.length());
        cplx log_deriv{0.0, 0.0};
        for (const cplx b : c.branch_points()) log_deriv += 1.0 / (t - b);
        const cplx w = c.w(t);
        const cplx first_order = 2.0 * delta * t * 0.5 * w * log_deriv;
        const cplx inner = c.w((1.0 - delta) * t), outer = c.w((1.0 + delta) * t);
        CHECK(std::abs(outer - inner - first_order) <= 1e-9 * std::abs(w));
      }
    }
  }
}

TEST_CASE("w changes sign across E") {
  const double delta = 1e-7;
  for (const ArcSet& e : all_fixtures()) {
    const HyperellipticCurve c(e);
    for (const Arc& arc : e.arcs()) {
      const cplx t = unit(arc.start_angle + 0.4 * arc.length());
      const cplx inner = c.w((1.0 - delta) * t), outer = c.w((1.0 + delta) * t);
      CHECK(std::abs(inner + outer) <= 1e-5 * std::abs(inner));
    }
  }
}

TEST_CASE("w agrees with brute-force continuation") {
  for (const ArcSet& e : all_fixtures()) {
    const HyperellipticCurve c(e);
    double worst = 0.0;
    for (const cplx z : random_points(30, 6)) {
      const cplx ref = oracles::w_continuation(c.branch_points(), z);
      worst = std::max(worst, std::abs(c.w(z) - ref) / std::abs(ref));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("one-sided edge values match interior limits") {
  const double delta = 1e-9;
  for (const ArcSet& e : all_fixtures()) {
    const HyperellipticCurve c(e);
    for (const Arc& arc : e.arcs()) {
      for (const double u : {0.05, 0.3, 0.7, 0.95}) {
        const double phi = canonical_angle(arc.start_angle + u * arc.length());
        const EdgePoint p = c.edge_point(phi);
        CHECK(std::abs(c.edge_z(p) - unit(phi)) < 1e-14);
        const cplx in = c.w((1.0 - delta) * unit(phi));
        const cplx out = c.w((1.0 + delta) * unit(phi));
        CHECK(std::abs(c.w_edge(p, Side::inside) - in) <= 1e-6 * std::abs(in));
        CHECK(std::abs(c.w_edge(p, Side::outside) - out) <= 1e-6 * std::abs(out));
      }
    }
  }
}

TEST_CASE("conjugation symmetry and sheet involution") {
  for (const ArcSet& e : all_fixtures()) {
    const HyperellipticCurve c(e);
    for (const cplx z : random_points(100, 7)) {
      CHECK(std::abs(c.w(std::conj(z)) - std::conj(c.w(z))) <= 1e-12 * std::abs(c.w(z)));
      CHECK(c.w(SurfacePoint{z, -1}) == -c.w(SurfacePoint{z, 1}));
    }
  }
}

TEST_CASE("divisor validation") {
  const HyperellipticCurve c1(fixtures::twoarc());
  const Divisor d = divisor_validate(c1, fixtures::midgap(c1));
  REQUIRE(d.points.size() == 2);
  CHECK(d.points[0].sheet == 1);
  CHECK(!d.points[0].branch);

  CHECK(error_of([&] { divisor_validate(c1, {{0.0, 1}}); }) == ErrorCode::WrongGapCount);
  CHECK(error_of([&] { divisor_validate(c1, {{0.0, 1}, {0.1, 1}}); }) == ErrorCode::WrongGapCount);
  CHECK(error_of([&] { divisor_validate(c1, {{1.0, 1}, {M_PI, 1}}); }) == ErrorCode::PointOffGap);
  CHECK(error_of([&] { divisor_validate(c1, {{0.0, 2}, {M_PI, 1}}); }) == ErrorCode::InvalidArgument);

  const HyperellipticCurve c0(fixtures::onearc(0.5));
  const Gap& g0 = c0.arcset().gaps().front();
  const Divisor snapped = divisor_validate(c0, {{g0.a_angle, -1}});
  CHECK(snapped.points[0].sheet == 1);
  REQUIRE(snapped.points[0].branch);
  CHECK(c0.branch_points()[*snapped.points[0].branch] == g0.a());
  const Divisor right = divisor_validate(c0, {{g0.b_angle, -1}});
  CHECK(right.points[0].sheet == 1);
  CHECK(right.points[0].branch == c0.branch_of_gap_b(0));
}

TEST_CASE("divisor json") {
  const HyperellipticCurve c(fixtures::twoarc());
  const Divisor d = divisor_validate(c, {{0.1, -1}, {2.5, 1}});
  const auto raw = divisor_from_json(to_json(d));
  REQUIRE(raw.size() == 2);
  CHECK(raw[0].first == doctest::Approx(0.1));
  CHECK(raw[0].second == -1);
  CHECK(raw[1].second == 1);
  CHECK(error_of([] { divisor_from_json(nlohmann::json::parse(R"({"divisor": [{"angle": "x"}]})")); }) ==
        ErrorCode::ParseError);
  CHECK(error_of([] { divisor_from_json(nlohmann::json::parse(R"({"points": []})")); }) == ErrorCode::ParseError);
}

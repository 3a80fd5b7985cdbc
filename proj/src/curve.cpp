#include "arcparam/curve.hpp"

#include <sstream>

#include "arcparam/error.hpp"

namespace arcparam {

namespace {

constexpr const char* kModule = "curve";

// Principal square root of v, with the cut side chosen when v sits on the
// negative real axis.
cplx sqrt_on_cut(cplx v, Side side) {
  const double m = std::sqrt(std::abs(v));
  return side == Side::inside ? cplx{0.0, -m} : cplx{0.0, m};
}

}  // namespace

HyperellipticCurve::HyperellipticCurve(ArcSet e) : arcset_(std::move(e)) {
  for (const Arc& arc : arcset_.arcs()) {
    ArcFactor f;
    f.alpha = arc.start_point();
    f.beta = arc.end_point();
    branch_points_.push_back(f.alpha);
    branch_points_.push_back(f.beta);
    // u = (z − α)/(z − β) sends the arc onto a ray from 0 to ∞.
    const cplx m = arc.midpoint();
    const double phi = std::arg((m - f.alpha) / (m - f.beta));
    f.ray_rotation = unit(-(phi - std::numbers::pi));
    f.half_turn = unit(0.5 * (phi - std::numbers::pi));
    f.sign = 1.0;
    const cplx at_inf = f.half_turn * std::sqrt(f.ray_rotation);  // h(z)/z as z → ∞
    f.sign = at_inf.real() > 0.0 ? 1.0 : -1.0;
    factors_.push_back(f);
  }
}

std::size_t HyperellipticCurve::branch_of_gap_a(std::size_t gap) const {
  const std::size_t n = factors_.size();
  return 2 * ((gap + n - 1) % n) + 1;
}

std::size_t HyperellipticCurve::branch_of_gap_b(std::size_t gap) const { return 2 * gap; }

cplx HyperellipticCurve::factor_from_diffs(const ArcFactor& f, cplx z_minus_alpha, cplx z_minus_beta,
                                           std::optional<Side> on_cut) const {
  const cplx u = z_minus_alpha / z_minus_beta;
  const cplx v = u * f.ray_rotation;
  const cplx root = on_cut ? sqrt_on_cut(v, *on_cut) : std::sqrt(v);
  return f.sign * z_minus_beta * f.half_turn * root;
}

cplx HyperellipticCurve::factor(const ArcFactor& f, cplx z) const {
  return factor_from_diffs(f, z - f.alpha, z - f.beta, std::nullopt);
}

cplx HyperellipticCurve::w(cplx z) const {
  cplx acc{1.0, 0.0};
  for (const auto& f : factors_) acc *= factor(f, z);
  return acc;
}

cplx HyperellipticCurve::branch_polynomial(cplx z) const {
  cplx acc{1.0, 0.0};
  for (const cplx b : branch_points_) acc *= (z - b);
  return acc;
}

cplx HyperellipticCurve::edge_z(const EdgePoint& p) const {
  const Arc& arc = arcset_.arcs()[p.arc];
  return p.from_end ? unit(arc.end_angle - p.offset) : unit(arc.start_angle + p.offset);
}

cplx HyperellipticCurve::edge_diff(const EdgePoint& p) const {
  const Arc& arc = arcset_.arcs()[p.arc];
  return p.from_end ? arc.end_point() * expm1_i(-p.offset) : arc.start_point() * expm1_i(p.offset);
}

EdgePoint HyperellipticCurve::edge_point(double angle) const {
  const auto k = arcset_.arc_of(angle, 0.0);
  if (!k) throw Error(ErrorCode::InvalidArgument, kModule, "angle is not on E");
  const Arc& arc = arcset_.arcs()[*k];
  const double from_start = ccw_distance(arc.start_angle, angle);
  const double to_end = arc.length() - from_start;
  if (from_start <= to_end) return EdgePoint{*k, false, from_start};
  return EdgePoint{*k, true, to_end};
}

cplx HyperellipticCurve::w_edge(const EdgePoint& p, Side side) const {
  const cplx z = edge_z(p);
  const cplx diff = edge_diff(p);
  cplx acc{1.0, 0.0};
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    const ArcFactor& f = factors_[k];
    if (k != p.arc) {
      acc *= factor(f, z);
      continue;
    }
    const cplx za = p.from_end ? z - f.alpha : diff;
    const cplx zb = p.from_end ? diff : z - f.beta;
    acc *= factor_from_diffs(f, za, zb, side);
  }
  return acc;
}

HyperellipticCurve build_curve(const ArcSet& e) { return HyperellipticCurve(e); }

Divisor divisor_validate(const HyperellipticCurve& curve, const std::vector<std::pair<double, int>>& raw) {
  const ArcSet& e = curve.arcset();
  const std::size_t n = e.gaps().size();
  if (raw.size() != n) {
    std::ostringstream os;
    os << "expected " << n << " divisor points, got " << raw.size();
    throw Error(ErrorCode::WrongGapCount, kModule, os.str());
  }
  std::vector<std::optional<DivisorPoint>> slots(n);
  for (const auto& [angle_in, sheet] : raw) {
    if (sheet != 1 && sheet != -1)
      throw Error(ErrorCode::InvalidArgument, kModule, "sheet must be +1 or -1");
    const double angle = canonical_angle(angle_in);
    const auto j = e.gap_of(angle);
    if (!j) {
      std::ostringstream os;
      os.precision(17);
      os << "divisor point at angle " << angle_in << " is not on a closed gap";
      throw Error(ErrorCode::PointOffGap, kModule, os.str());
    }
    if (slots[*j]) {
      std::ostringstream os;
      os << "two divisor points in gap " << *j;
      throw Error(ErrorCode::WrongGapCount, kModule, os.str());
    }
    const Gap& g = e.gaps()[*j];
    DivisorPoint dp{angle, sheet, std::nullopt};
    const double from_a = ccw_distance(g.a_angle, angle);
    if (from_a <= kAngleTol || kTwoPi - from_a <= kAngleTol) {
      dp = DivisorPoint{g.a_angle, 1, curve.branch_of_gap_a(*j)};
    } else if (std::abs(from_a - g.length()) <= kAngleTol) {
      dp = DivisorPoint{g.b_angle, 1, curve.branch_of_gap_b(*j)};
    }
    slots[*j] = dp;
  }
  Divisor d;
  for (auto& s : slots) d.points.push_back(*s);
  return d;
}

std::vector<std::pair<double, int>> divisor_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::pair<double, int>> out;
    for (const auto& item : j.at("divisor"))
      out.emplace_back(item.at("angle").get<double>(), item.at("sheet").get<int>());
    return out;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, kModule, ex.what());
  }
}

nlohmann::json to_json(const Divisor& d) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : d.points) pts.push_back({{"angle", p.angle}, {"sheet", p.sheet}});
  return {{"divisor", pts}};
}

}  // namespace arcparam

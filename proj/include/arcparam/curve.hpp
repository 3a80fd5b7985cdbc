#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arcparam/arcset.hpp"
#include "arcparam/complex.hpp"

namespace arcparam {

/// A point on the double: z with sheet +1 (physical, where Ω lives) or −1.
struct SurfacePoint {
  cplx z;
  int sheet = 1;
};

/// A point of the arc set given by its angular offset from an arc endpoint,
/// so that z minus that endpoint is available without cancellation.
struct EdgePoint {
  std::size_t arc = 0;
  bool from_end = false;  // measured clockwise from the arc end, else ccw from its start
  double offset = 0.0;    // radians, in [0, arc length]
};

enum class Side { inside, outside };

/// One divisor point (t_j, ε_j) on the closed gap j.
struct DivisorPoint {
  double angle = 0.0;
  int sheet = 1;
  /// Index into HyperellipticCurve::branch_points() when t_j is a gap endpoint.
  std::optional<std::size_t> branch;

  cplx t() const { return unit(angle); }
};

/// One point per gap, ordered by gap index.
struct Divisor {
  std::vector<DivisorPoint> points;
};

/// The double of Ω = C̄ ∖ E with the branch of
/// w(z) = sqrt(∏ (z − a_j)(z − b_j)) that is continuous off E and satisfies
/// w(x)/x^{g+1} → 1 as x → +∞.
class HyperellipticCurve {
 public:
  explicit HyperellipticCurve(ArcSet e);

  const ArcSet& arcset() const { return arcset_; }
  std::size_t genus() const { return arcset_.genus(); }
  /// Arc endpoints: index 2k is the start of arc k, 2k + 1 its end.
  const std::vector<cplx>& branch_points() const { return branch_points_; }
  /// Branch index of a_j and b_j.
  std::size_t branch_of_gap_a(std::size_t gap) const;
  std::size_t branch_of_gap_b(std::size_t gap) const;

  /// w(z) for z off E (physical sheet).
  cplx w(cplx z) const;
  /// Value w(z) on the given sheet.
  cplx w(const SurfacePoint& p) const { return static_cast<double>(p.sheet) * w(p.z); }
  /// One-sided boundary value of w on E.
  cplx w_edge(const EdgePoint& p, Side side = Side::inside) const;
  /// ∏ (z − a_j)(z − b_j).
  cplx branch_polynomial(cplx z) const;

  cplx edge_z(const EdgePoint& p) const;
  /// z minus the reference endpoint of the edge point.
  cplx edge_diff(const EdgePoint& p) const;
  std::size_t edge_branch(const EdgePoint& p) const { return 2 * p.arc + (p.from_end ? 1 : 0); }
  /// Edge point for an angle in the interior of an arc, referenced to the nearer endpoint.
  EdgePoint edge_point(double angle) const;

 private:
  struct ArcFactor {
    cplx alpha;        // start
    cplx beta;         // end
    cplx ray_rotation; // e^{−i(φ − π)}, φ = direction of the image ray of the arc
    cplx half_turn;    // e^{i(φ − π)/2}
    double sign;       // fixes the behaviour at +∞
  };

  cplx factor(const ArcFactor& f, cplx z) const;
  cplx factor_from_diffs(const ArcFactor& f, cplx z_minus_alpha, cplx z_minus_beta,
                         std::optional<Side> on_cut) const;

  ArcSet arcset_;
  std::vector<cplx> branch_points_;
  std::vector<ArcFactor> factors_;
};

HyperellipticCurve build_curve(const ArcSet& e);

inline cplx evaluate_w(const HyperellipticCurve& curve, cplx z) { return curve.w(z); }

/// Validates raw (angle, sheet) pairs: one per closed gap, sheets ±1, branch
/// points snapped to the exact endpoint with sheet +1.
Divisor divisor_validate(const HyperellipticCurve& curve, const std::vector<std::pair<double, int>>& raw);

/// {"divisor": [{"angle": <radians>, "sheet": 1|-1}, ...]}
std::vector<std::pair<double, int>> divisor_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Divisor& d);

}  // namespace arcparam

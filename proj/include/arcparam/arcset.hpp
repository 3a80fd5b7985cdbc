#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "arcparam/complex.hpp"

namespace arcparam {

/// Absolute tolerance for angle comparisons, radians.
inline constexpr double kAngleTol = 1e-12;

/// Reduce an angle to [0, 2π).
double canonical_angle(double angle);

/// Counterclockwise distance from angle `from` to angle `to`, in [0, 2π).
double ccw_distance(double from, double to);

/// Closed arc traversed counterclockwise from start_angle to end_angle.
struct Arc {
  double start_angle = 0.0;
  double end_angle = 0.0;

  double length() const { return ccw_distance(start_angle, end_angle); }
  cplx start_point() const { return unit(start_angle); }
  cplx end_point() const { return unit(end_angle); }
  cplx midpoint() const { return unit(start_angle + 0.5 * length()); }
  /// Closed-arc membership with tolerance `tol` at the endpoints.
  bool contains(double angle, double tol = kAngleTol) const;
};

/// Open gap (a, b) of the circle, traversed counterclockwise from a to b.
struct Gap {
  double a_angle = 0.0;
  double b_angle = 0.0;

  cplx a() const { return unit(a_angle); }
  cplx b() const { return unit(b_angle); }
  double length() const { return ccw_distance(a_angle, b_angle); }
  double mid_angle() const { return canonical_angle(a_angle + 0.5 * length()); }
  /// Open-gap membership; points within `tol` of an endpoint are outside.
  bool contains_open(double angle, double tol = kAngleTol) const;
  /// Closed-gap membership.
  bool contains_closed(double angle, double tol = kAngleTol) const;
};

/// The set E: disjoint, non-degenerate, conjugation-symmetric arcs whose
/// complement contains the point 1.
///
/// Ordering: gap 0 is the gap containing 1; gaps and arcs are then numbered
/// counterclockwise, so arc k runs from b_k to a_{k+1} (indices mod g+1).
class ArcSet {
 public:
  static ArcSet build(std::vector<Arc> arcs);

  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<Gap>& gaps() const { return gaps_; }
  std::size_t genus() const { return arcs_.size() - 1; }

  /// Index of the arc containing the angle (closed arcs).
  std::optional<std::size_t> arc_of(double angle, double tol = kAngleTol) const;
  /// Index of the closed gap containing the angle.
  std::optional<std::size_t> gap_of(double angle, double tol = kAngleTol) const;

  ArcSet conjugate() const;
  bool same_as(const ArcSet& other, double tol = kAngleTol) const;

 private:
  ArcSet() = default;
  std::vector<Arc> arcs_;
  std::vector<Gap> gaps_;
};

/// {"arcs": [{"start": <radians>, "end": <radians>}, ...]}
ArcSet arcset_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ArcSet& e);

}  // namespace arcparam

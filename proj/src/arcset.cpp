#include "arcparam/arcset.hpp"

#include <algorithm>
#include <sstream>

#include "arcparam/error.hpp"

namespace arcparam {

namespace {

constexpr const char* kModule = "arcset";

std::string describe(const Arc& a) {
  std::ostringstream os;
  os.precision(17);
  os << "[" << a.start_angle << ", " << a.end_angle << "]";
  return os.str();
}

bool same_angle(double x, double y, double tol) {
  const double d = ccw_distance(x, y);
  return d <= tol || kTwoPi - d <= tol;
}

}  // namespace

double canonical_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double ccw_distance(double from, double to) { return canonical_angle(to - from); }

bool Arc::contains(double angle, double tol) const {
  const double d = ccw_distance(start_angle, angle);
  return d <= length() + tol || kTwoPi - d <= tol;
}

bool Gap::contains_open(double angle, double tol) const {
  const double d = ccw_distance(a_angle, angle);
  return d > tol && d < length() - tol;
}

bool Gap::contains_closed(double angle, double tol) const {
  const double d = ccw_distance(a_angle, angle);
  return d <= length() + tol || kTwoPi - d <= tol;
}

ArcSet ArcSet::build(std::vector<Arc> arcs) {
  if (arcs.empty()) throw Error(ErrorCode::InvalidArgument, kModule, "at least one arc is required");

  for (auto& a : arcs) {
    a.start_angle = canonical_angle(a.start_angle);
    a.end_angle = canonical_angle(a.end_angle);
    const double len = a.length();
    if (len <= kAngleTol || len >= kTwoPi - kAngleTol)
      throw Error(ErrorCode::DegenerateArc, kModule, "arc " + describe(a) + " has no interior");
  }

  // Order by counterclockwise position from angle 0, then reject overlap or contact.
  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& x, const Arc& y) { return x.start_angle < y.start_angle; });
  const double origin = arcs.front().start_angle;
  double covered_to = -1.0;  // relative to origin
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const double rel_start = ccw_distance(origin, arcs[i].start_angle);
    if (i > 0 && rel_start <= covered_to + kAngleTol)
      throw Error(ErrorCode::OverlappingArcs, kModule,
                  "arcs " + describe(arcs[i - 1]) + " and " + describe(arcs[i]) + " overlap or touch");
    covered_to = rel_start + arcs[i].length();
  }
  if (arcs.size() > 1 && covered_to >= kTwoPi - kAngleTol)
    throw Error(ErrorCode::OverlappingArcs, kModule,
                "arcs " + describe(arcs.back()) + " and " + describe(arcs.front()) + " overlap or touch");

  for (const auto& a : arcs)
    if (a.contains(0.0))
      throw Error(ErrorCode::PointOneInsideE, kModule, "arc " + describe(a) + " contains the point 1");

  ArcSet e;
  e.arcs_ = std::move(arcs);
  const std::size_t n = e.arcs_.size();
  e.gaps_.resize(n);
  // Arcs are sorted by start angle in [0, 2π) and none contains 0, so gap 0
  // runs from the end of the last arc to the start of the first.
  for (std::size_t j = 0; j < n; ++j) {
    const Arc& before = e.arcs_[(j + n - 1) % n];
    e.gaps_[j] = Gap{before.end_angle, e.arcs_[j].start_angle};
  }

  if (!e.same_as(e.conjugate()))
    throw Error(ErrorCode::AsymmetricArcSet, kModule, "arc set is not invariant under complex conjugation");
  return e;
}

std::optional<std::size_t> ArcSet::arc_of(double angle, double tol) const {
  for (std::size_t k = 0; k < arcs_.size(); ++k)
    if (arcs_[k].contains(angle, tol)) return k;
  return std::nullopt;
}

std::optional<std::size_t> ArcSet::gap_of(double angle, double tol) const {
  for (std::size_t j = 0; j < gaps_.size(); ++j)
    if (gaps_[j].contains_closed(angle, tol)) return j;
  return std::nullopt;
}

ArcSet ArcSet::conjugate() const {
  ArcSet c;
  for (const auto& a : arcs_)
    c.arcs_.push_back(Arc{canonical_angle(-a.end_angle), canonical_angle(-a.start_angle)});
  std::sort(c.arcs_.begin(), c.arcs_.end(),
            [](const Arc& x, const Arc& y) { return x.start_angle < y.start_angle; });
  const std::size_t n = c.arcs_.size();
  c.gaps_.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    c.gaps_[j] = Gap{c.arcs_[(j + n - 1) % n].end_angle, c.arcs_[j].start_angle};
  return c;
}

bool ArcSet::same_as(const ArcSet& other, double tol) const {
  if (arcs_.size() != other.arcs_.size()) return false;
  for (const auto& a : arcs_) {
    const bool found = std::any_of(other.arcs_.begin(), other.arcs_.end(), [&](const Arc& b) {
      return same_angle(a.start_angle, b.start_angle, tol) && same_angle(a.end_angle, b.end_angle, tol);
    });
    if (!found) return false;
  }
  return true;
}

ArcSet arcset_from_json(const nlohmann::json& j) {
  try {
    std::vector<Arc> arcs;
    for (const auto& item : j.at("arcs"))
      arcs.push_back(Arc{item.at("start").get<double>(), item.at("end").get<double>()});
    return ArcSet::build(std::move(arcs));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, kModule, ex.what());
  }
}

nlohmann::json to_json(const ArcSet& e) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& a : e.arcs()) arcs.push_back({{"start", a.start_angle}, {"end", a.end_angle}});
  return {{"arcs", arcs}};
}

}  // namespace arcparam

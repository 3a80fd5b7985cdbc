#include "arcparam/measure.hpp"

#include <ostream>
#include <sstream>

#include "arcparam/error.hpp"

namespace arcparam {

namespace {

constexpr const char* kModule = "measure";
constexpr double kClamp = -1e-8;
constexpr double kMassTol = 1e-7;
// Nodes are generated out to 1 − |x| ≈ e^{−kTailExponent}.
constexpr double kTailExponent = 100.0;

}  // namespace

cplx QuadratureMeasure::moment(int k) const {
  cplx acc{};
  for (std::size_t i = 0; i < node_angles.size(); ++i) acc += weights[i] * unit(-k * node_angles[i]);
  for (const auto& a : atoms) acc += a.mass * unit(-k * a.angle);
  return acc;
}

QuadratureMeasure QuadratureMeasure::uniform(std::size_t n) {
  QuadratureMeasure mu;
  for (std::size_t k = 0; k < n; ++k) {
    mu.node_angles.push_back(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
    mu.weights.push_back(1.0 / static_cast<double>(n));
  }
  mu.total_mass = 1.0;
  return mu;
}

QuadratureMeasure QuadratureMeasure::discrete(std::vector<Atom> atoms) {
  QuadratureMeasure mu;
  for (const auto& a : atoms) mu.total_mass += a.mass;
  mu.atoms = std::move(atoms);
  return mu;
}

double density_edge(const SurfaceFunction& M, const EdgePoint& p) {
  const double v = M.value_edge(p, Side::inside).real() / kTwoPi;
  if (v >= 0.0) return v;
  if (v >= kClamp) return 0.0;
  std::ostringstream os;
  os << "density " << v << " on arc " << p.arc;
  throw Error(ErrorCode::NegativeDensity, kModule, os.str());
}

double density(const SurfaceFunction& M, double phi) {
  const auto& e = M.curve().arcset();
  const auto arc = e.arc_of(phi, 0.0);
  if (!arc) throw Error(ErrorCode::InvalidArgument, kModule, "angle is not on E");
  const Arc& a = e.arcs()[*arc];
  const double from_start = ccw_distance(a.start_angle, phi);
  if (from_start <= kAngleTol || from_start >= a.length() - kAngleTol)
    throw Error(ErrorCode::InvalidArgument, kModule, "angle must be interior to an arc");
  return density_edge(M, M.curve().edge_point(phi));
}

std::vector<Atom> atom_masses(const SurfaceFunction& M, const Divisor& D) {
  std::vector<Atom> atoms;
  const auto& roots = M.d_roots();
  for (std::size_t j = 0; j < D.points.size(); ++j) {
    const auto& pt = D.points[j];
    if (pt.sheet != 1 || pt.branch) continue;
    const cplx t = roots[j];
    // mass = lim (t − z) M(z) / 2t = −(p(t) + q w(t)) / (2t ∏_{k≠j}(t − t_k))
    cplx rest{1.0, 0.0};
    for (std::size_t k = 0; k < roots.size(); ++k)
      if (k != j) rest *= (t - roots[k]);
    const cplx mass = -(M.p_at(t) + M.q() * M.curve().w(t)) / (2.0 * t * rest);
    if (mass.real() < -1e-12 || std::abs(mass.imag()) > 1e-8 * (1.0 + std::abs(mass))) {
      std::ostringstream os;
      os.precision(17);
      os << "atom at angle " << pt.angle << " has mass (" << mass.real() << ", " << mass.imag() << ")";
      throw Error(ErrorCode::NegativeMass, kModule, os.str());
    }
    atoms.push_back(Atom{pt.angle, std::max(0.0, mass.real())});
  }
  return atoms;
}

ArcRule tanh_sinh_arc(const HyperellipticCurve& curve, std::size_t arc, int level) {
  if (level < 3 || level > 12) throw Error(ErrorCode::InvalidArgument, kModule, "level must lie in [3, 12]");
  const double len = curve.arcset().arcs()[arc].length();
  const double h = 8.0 / static_cast<double>(1 << level);
  const double half_pi = 0.5 * std::numbers::pi;
  ArcRule rule;
  // t = 0 is the arc midpoint; for t ≠ 0 the offset from the nearer endpoint is
  // L / (e^{2y} + 1), y = (π/2) sinh|t|, computed without cancellation.
  rule.points.push_back(curve.edge_point(curve.arcset().arcs()[arc].start_angle + 0.5 * len));
  rule.weights.push_back(0.5 * len * h * half_pi);
  for (int k = 1;; ++k) {
    const double t = k * h;
    const double y = half_pi * std::sinh(t);
    if (2.0 * y > kTailExponent) break;
    const double offset = len / (std::exp(2.0 * y) + 1.0);
    const double cy = std::cosh(y);
    const double wx = h * half_pi * std::cosh(t) / (cy * cy);
    for (const bool from_end : {false, true}) {
      rule.points.push_back(EdgePoint{arc, from_end, offset});
      rule.weights.push_back(0.5 * len * wx);
    }
  }
  return rule;
}

QuadratureMeasure quadrature(const SurfaceFunction& M, const Divisor& D, int level) {
  const auto& curve = M.curve();
  QuadratureMeasure mu;
  for (std::size_t k = 0; k < curve.arcset().arcs().size(); ++k) {
    const ArcRule rule = tanh_sinh_arc(curve, k, level);
    const Arc& arc = curve.arcset().arcs()[k];
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
      const EdgePoint& ep = rule.points[i];
      const double angle = ep.from_end ? arc.end_angle - ep.offset : arc.start_angle + ep.offset;
      mu.node_angles.push_back(canonical_angle(angle));
      mu.weights.push_back(rule.weights[i] * density_edge(M, ep));
    }
  }
  mu.atoms = atom_masses(M, D);
  for (const double w : mu.weights) mu.total_mass += w;
  for (const auto& a : mu.atoms) mu.total_mass += a.mass;
  if (level >= 8 && std::abs(mu.total_mass - 1.0) > kMassTol) {
    std::ostringstream os;
    os.precision(17);
    os << "total mass " << mu.total_mass << " at level " << level;
    throw Error(ErrorCode::MassDeficit, kModule, os.str());
  }
  return mu;
}

void write_nodes_csv(std::ostream& os, const QuadratureMeasure& mu) {
  const auto old = os.precision(17);
  os << "angle,weight\n";
  for (std::size_t i = 0; i < mu.node_angles.size(); ++i) os << mu.node_angles[i] << "," << mu.weights[i] << "\n";
  os.precision(old);
}

void write_atoms_csv(std::ostream& os, const QuadratureMeasure& mu) {
  const auto old = os.precision(17);
  os << "angle,mass\n";
  for (const auto& a : mu.atoms) os << a.angle << "," << a.mass << "\n";
  os.precision(old);
}

}  // namespace arcparam

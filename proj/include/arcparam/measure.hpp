#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "arcparam/mfunc.hpp"

namespace arcparam {

struct Atom {
  double angle = 0.0;
  double mass = 0.0;
  cplx location() const { return unit(angle); }
};

/// σ_D as weighted nodes on E plus point masses in the gaps.
struct QuadratureMeasure {
  std::vector<double> node_angles;
  std::vector<double> weights;
  std::vector<Atom> atoms;
  double total_mass = 0.0;

  std::size_t support_size() const { return node_angles.size() + atoms.size(); }
  /// ∫ t̄^k dσ.
  cplx moment(int k) const;

  /// Equal weights at n equispaced points (discretized Lebesgue measure).
  static QuadratureMeasure uniform(std::size_t n);
  /// Unit point masses only.
  static QuadratureMeasure discrete(std::vector<Atom> atoms);
};

/// Density Re M(e^{iφ}) / 2π of the absolutely continuous part, inside limit.
double density(const SurfaceFunction& M, double phi);
/// Same for a point given relative to an arc endpoint.
double density_edge(const SurfaceFunction& M, const EdgePoint& p);

/// Point masses at physical-sheet divisor points in open gaps.
std::vector<Atom> atom_masses(const SurfaceFunction& M, const Divisor& D);

/// Nodes of the tanh–sinh rule on one arc: step 8 / 2^level.
struct ArcRule {
  std::vector<EdgePoint> points;
  std::vector<double> weights;  // in dφ
};
ArcRule tanh_sinh_arc(const HyperellipticCurve& curve, std::size_t arc, int level);

/// Per-arc tanh–sinh quadrature of the density plus atoms. No renormalization.
QuadratureMeasure quadrature(const SurfaceFunction& M, const Divisor& D, int level = 8);

/// CSV `angle,weight` for the nodes.
void write_nodes_csv(std::ostream& os, const QuadratureMeasure& mu);
/// CSV `angle,mass` for the atoms.
void write_atoms_csv(std::ostream& os, const QuadratureMeasure& mu);

}  // namespace arcparam

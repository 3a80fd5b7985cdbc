#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "arcparam/arcset.hpp"
#include "arcparam/curve.hpp"
#include "arcparam/error.hpp"
#include "arcparam/hardy0.hpp"

namespace fixtures {

using arcparam::Arc;
using arcparam::ArcSet;
using arcparam::HyperellipticCurve;
using arcparam::kTwoPi;

inline std::string data_path(const std::string& name) { return std::string(ARCPARAM_TEST_DATA) + "/" + name; }

inline ArcSet onearc(double r = 0.5) { return arcparam::hardy0::OneArcSpace::make(r).arcset(); }

/// [0.5, 1.5] and its conjugate; gap 0 = (−0.5, 0.5), gap 1 = (1.5, 2π − 1.5).
inline ArcSet twoarc() { return ArcSet::build({Arc{0.5, 1.5}, Arc{kTwoPi - 1.5, kTwoPi - 0.5}}); }

/// Two long arcs with short gaps around 1 and −1.
inline ArcSet twoarc_wide() { return ArcSet::build({Arc{0.35, 2.85}, Arc{kTwoPi - 2.85, kTwoPi - 0.35}}); }

/// g = 2: a conjugate pair plus one self-conjugate arc through −1.
inline ArcSet threearc() {
  return ArcSet::build({Arc{0.4, 1.6}, Arc{2.5, kTwoPi - 2.5}, Arc{kTwoPi - 1.6, kTwoPi - 0.4}});
}

/// Mid-gap divisor with the given sheets.
inline std::vector<std::pair<double, int>> midgap(const HyperellipticCurve& c, std::vector<int> sheets = {}) {
  std::vector<std::pair<double, int>> raw;
  for (std::size_t j = 0; j < c.arcset().gaps().size(); ++j)
    raw.emplace_back(c.arcset().gaps()[j].mid_angle(), sheets.empty() ? 1 : sheets[j]);
  return raw;
}

/// Divisor with t_j at fraction u_j ∈ [0, 1] of gap j.
inline std::vector<std::pair<double, int>> at_fractions(const HyperellipticCurve& c, const std::vector<double>& u,
                                                        const std::vector<int>& sheets) {
  std::vector<std::pair<double, int>> raw;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const auto& gap = c.arcset().gaps()[j];
    raw.emplace_back(arcparam::canonical_angle(gap.a_angle + u[j] * gap.length()), sheets[j]);
  }
  return raw;
}

/// Reproducible sweep over D(E): interior gap points with random sheets.
inline std::vector<std::vector<std::pair<double, int>>> divisor_sweep(const HyperellipticCurve& c, std::size_t count,
                                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> frac(0.02, 0.98);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::vector<std::pair<double, int>>> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> u;
    std::vector<int> s;
    for (std::size_t j = 0; j < c.arcset().gaps().size(); ++j) {
      u.push_back(frac(rng));
      s.push_back(coin(rng) ? 1 : -1);
    }
    out.push_back(at_fractions(c, u, s));
  }
  return out;
}

/// Error code raised by f(), or nullopt if it returns normally.
template <class F>
std::optional<arcparam::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const arcparam::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace fixtures

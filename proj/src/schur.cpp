#include "arcparam/schur.hpp"

#include <algorithm>
#include <ostream>

#include "arcparam/error.hpp"

namespace arcparam {

namespace {

constexpr const char* kModule = "schur";
constexpr double kExtremal = 1.0 - 1e-12;
constexpr double kModulusSlack = 1e-9;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

void write_csv(std::ostream& os, const SchurParamSeq& seq) {
  const auto old = os.precision(17);
  os << "n,re,im\n";
  for (std::size_t n = 0; n < seq.size(); ++n)
    os << n << "," << seq[n].real() << "," << seq[n].imag() << "\n";
  os.precision(old);
}

SampledSchurFn::SampledSchurFn(double radius, std::vector<cplx> samples)
    : radius_(radius), samples_(std::move(samples)) {
  if (!(radius_ > 0.0 && radius_ < 1.0))
    throw Error(ErrorCode::InvalidArgument, kModule, "sampling radius must lie in (0, 1)");
  if (!is_pow2(samples_.size()) || samples_.size() < 256)
    throw Error(ErrorCode::InvalidArgument, kModule, "grid size must be a power of two >= 256");
  if (max_modulus() > 1.0 + kModulusSlack)
    throw Error(ErrorCode::InvalidArgument, kModule, "samples exceed the unit modulus bound");
}

SampledSchurFn SampledSchurFn::sample(const AnalyticFn& f, double radius, std::size_t n_grid) {
  std::vector<cplx> v(n_grid);
  for (std::size_t k = 0; k < n_grid; ++k) v[k] = f(radius * unit(kTwoPi * k / n_grid));
  return {radius, std::move(v)};
}

SampledSchurFn SampledSchurFn::constant(cplx c, double radius, std::size_t n_grid) {
  return {radius, std::vector<cplx>(n_grid, c)};
}

cplx SampledSchurFn::point(std::size_t k) const {
  return radius_ * unit(kTwoPi * static_cast<double>(k) / static_cast<double>(samples_.size()));
}

namespace {

// Pairwise summation keeps the rounding error of the grid mean at O(eps log n).
cplx pairwise_sum(const cplx* v, std::size_t n) {
  if (n <= 8) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) acc += v[k];
    return acc;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace

cplx SampledSchurFn::mean() const {
  return pairwise_sum(samples_.data(), samples_.size()) / static_cast<double>(samples_.size());
}

double SampledSchurFn::max_modulus() const {
  double m = 0.0;
  for (const auto& v : samples_) m = std::max(m, std::abs(v));
  return m;
}

std::pair<cplx, SampledSchurFn> schur_strip(const SampledSchurFn& s) {
  const cplx a = s.mean();
  if (std::abs(a) >= kExtremal)
    throw Error(ErrorCode::ExtremalFunction, kModule, "|s(0)| reached 1; the sequence terminates");
  std::vector<cplx> next(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const cplx v = s.samples()[k];
    next[k] = (v - a) / (s.point(k) * (1.0 - std::conj(a) * v));
  }
  // Rounding may push a remainder slightly past the unit bound; schur_sequence reports it.
  return {a, SampledSchurFn(SampledSchurFn::Unchecked{}, s.radius(), std::move(next))};
}

SampledSchurFn schur_compose(const SchurParamSeq& params, const SampledSchurFn& tail) {
  for (const auto& a : params.params)
    if (!(std::abs(a) < 1.0))
      throw Error(ErrorCode::ParamOutOfDisk, kModule, "Schur parameter outside the open unit disk");
  std::vector<cplx> v = tail.samples();
  for (std::size_t k = 0; k < v.size(); ++k) {
    const cplx z = tail.point(k);
    for (auto it = params.params.rbegin(); it != params.params.rend(); ++it) {
      const cplx zs = z * v[k];
      v[k] = (*it + zs) / (1.0 + std::conj(*it) * zs);
    }
  }
  return {tail.radius(), std::move(v)};
}

SampledSchurFn schur_compose(const SchurParamSeq& params, double radius, std::size_t n_grid) {
  return schur_compose(params, SampledSchurFn::constant(cplx{}, radius, n_grid));
}

SchurParamSeq schur_sequence(SampledSchurFn s, std::size_t N) {
  if (N == 0) throw Error(ErrorCode::InvalidArgument, kModule, "N must be positive");
  SchurParamSeq seq;
  seq.params.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    if (std::abs(s.mean()) >= kExtremal) {
      seq.params.push_back(s.mean());
      seq.terminated = true;
      break;
    }
    auto [a, next] = schur_strip(s);
    seq.params.push_back(a);
    seq.overshoot.push_back(std::max(0.0, next.max_modulus() - 1.0));
    s = std::move(next);
  }
  return seq;
}

SchurParamSeq schur_sequence(const AnalyticFn& M, std::size_t N, double radius, std::size_t n_grid) {
  if (!(radius > 0.1 && radius < 0.9))
    throw Error(ErrorCode::InvalidArgument, kModule, "radius must lie in (0.1, 0.9)");
  const AnalyticFn f = cayley_caratheodory_to_schur(M);
  return schur_sequence(SampledSchurFn::sample(f, radius, n_grid), N);
}

}  // namespace arcparam

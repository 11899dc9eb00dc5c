#include "flatnorm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flatnorm/errors.hpp"

namespace flatnorm {

namespace {

std::vector<Atom> consolidate(const MetricSpace& space, std::vector<Atom> atoms) {
  for (const auto& a : atoms) space.check_point(a.point);
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    return std::lexicographical_compare(a.point.begin(), a.point.end(), b.point.begin(),
                                        b.point.end());
  });
  std::vector<Atom> out;
  for (auto& a : atoms) {
    if (!out.empty() && space.same_point(out.back().point, a.point))
      out.back().weight += a.weight;
    else
      out.push_back(std::move(a));
  }
  std::erase_if(out, [](const Atom& a) { return a.weight == 0.0; });
  return out;
}

}  // namespace

DiscreteSignedMeasure::DiscreteSignedMeasure(MetricSpace space, std::vector<Atom> atoms)
    : space_(std::move(space)), atoms_(consolidate(space_, std::move(atoms))) {}

DiscreteSignedMeasure DiscreteSignedMeasure::dirac(const MetricSpace& space, Point p,
                                                   double weight) {
  return DiscreteSignedMeasure(space, {Atom{std::move(p), weight}});
}

std::pair<DiscreteSignedMeasure, DiscreteSignedMeasure> DiscreteSignedMeasure::jordan() const {
  std::vector<Atom> pos, neg;
  for (const auto& a : atoms_) {
    if (a.weight > 0)
      pos.push_back(a);
    else
      neg.push_back({a.point, -a.weight});
  }
  return {DiscreteSignedMeasure(space_, std::move(pos)),
          DiscreteSignedMeasure(space_, std::move(neg))};
}

double DiscreteSignedMeasure::tv_norm() const {
  double s = 0;
  for (const auto& a : atoms_) s += std::abs(a.weight);
  return s;
}

double DiscreteSignedMeasure::total_mass() const {
  double s = 0;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

double DiscreteSignedMeasure::pair_with(const LipFunction& f) const {
  if (!f.space().same_domain(space_))
    throw ValidationError("pair: measure and function live on different spaces");
  double s = 0;
  for (const auto& a : atoms_) s += a.weight * f(a.point);
  return s;
}

DiscreteSignedMeasure DiscreteSignedMeasure::scaled(double c) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.weight *= c;
  return DiscreteSignedMeasure(space_, std::move(atoms));
}

DiscreteSignedMeasure DiscreteSignedMeasure::pushforward(
    const std::function<Point(const Point&)>& phi) const {
  std::vector<Atom> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& a : atoms_) atoms.push_back({phi(a.point), a.weight});
  return DiscreteSignedMeasure(space_, std::move(atoms));
}

double DiscreteSignedMeasure::mass_outside_neighborhood(const PointSet& K, double lambda) const {
  if (K.empty()) throw ValidationError("mass_outside_neighborhood: empty set");
  double s = 0;
  for (const auto& a : atoms_)
    if (set_distance(space_, a.point, K) > lambda) s += std::abs(a.weight);
  return s;
}

PointSet DiscreteSignedMeasure::support() const {
  PointSet out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.point);
  return out;
}

DiscreteSignedMeasure operator+(const DiscreteSignedMeasure& a, const DiscreteSignedMeasure& b) {
  if (!a.space_.same_domain(b.space_))
    throw ValidationError("measure addition: space mismatch");
  std::vector<Atom> atoms = a.atoms_;
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  return DiscreteSignedMeasure(a.space_, std::move(atoms));
}

DiscreteSignedMeasure operator-(const DiscreteSignedMeasure& a, const DiscreteSignedMeasure& b) {
  return a + b.scaled(-1.0);
}

// ---- DensityMeasure1D ----

DensityMeasure1D DensityMeasure1D::sinusoid(double amplitude, double frequency) {
  if (frequency <= 0) throw ValidationError("sinusoid density: frequency must be positive");
  DensityMeasure1D m;
  m.sinusoid_ = true;
  m.amplitude_ = amplitude;
  m.frequency_ = frequency;
  return m;
}

DensityMeasure1D DensityMeasure1D::generic(std::function<double(double)> density,
                                           std::optional<double> frequency_hint) {
  if (!density) throw ValidationError("generic density: missing evaluator");
  DensityMeasure1D m;
  m.density_ = std::move(density);
  m.freq_hint_ = frequency_hint;
  return m;
}

namespace {

// integral over [x0,x1] of (c + s x) a sin(w x) dx, exact antiderivative.
double linear_times_sine(double x0, double x1, double c, double s, double a, double w) {
  auto F = [&](double x) {
    return -(c + s * x) * std::cos(w * x) / w + s * std::sin(w * x) / (w * w);
  };
  return a * (F(x1) - F(x0));
}

double simpson(const std::function<double(double)>& g, double lo, double hi, std::size_t panels) {
  const double h = (hi - lo) / static_cast<double>(panels);
  double s = g(lo) + g(hi);
  for (std::size_t i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * g(lo + i * h);
  return s * h / 3.0;
}

double refine_quadrature(const std::function<double(double)>& g, double freq, double tol) {
  // At least 64 panels per oscillation period; Simpson needs an even count.
  std::size_t panels = std::max<std::size_t>(512, static_cast<std::size_t>(64 * std::ceil(freq)));
  if (panels % 2) ++panels;
  double prev = simpson(g, 0.0, 1.0, panels);
  for (int iter = 0; iter < 16; ++iter) {
    panels *= 2;
    const double cur = simpson(g, 0.0, 1.0, panels);
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

double DensityMeasure1D::pair_breakpoints(const std::vector<std::array<double, 2>>& bp,
                                          double tol) const {
  if (tol <= 0) throw ValidationError("pair_density: tol must be positive");
  if (bp.empty()) throw ValidationError("pair_density: empty breakpoint list");
  if (!sinusoid_) {
    // Fall back to quadrature on the interpolant.
    auto f = piecewise_linear_1d(MetricSpace::unit_interval(), bp);
    return pair_with(f, tol);
  }
  const double w = 2 * std::numbers::pi * frequency_;
  // Segment list covering [0,1] with constant extension beyond the ends.
  std::vector<std::array<double, 2>> segs;  // (x, y) nodes spanning [0,1]
  if (bp.front()[0] > 0) segs.push_back({0.0, bp.front()[1]});
  for (const auto& p : bp)
    if (p[0] >= 0 && p[0] <= 1) segs.push_back(p);
  if (bp.back()[0] < 1) segs.push_back({1.0, bp.back()[1]});
  double total = 0;
  for (std::size_t i = 1; i < segs.size(); ++i) {
    const double xa = segs[i - 1][0], ya = segs[i - 1][1];
    const double xb = segs[i][0], yb = segs[i][1];
    if (xb <= xa) continue;
    const double s = (yb - ya) / (xb - xa);
    const double c = ya - s * xa;
    total += linear_times_sine(xa, xb, c, s, amplitude_, w);
  }
  return total;
}

double DensityMeasure1D::pair_with(const LipFunction& f, double tol) const {
  if (tol <= 0) throw ValidationError("pair_density: tol must be positive");
  if (sinusoid_ && f.breakpoints_1d()) return pair_breakpoints(*f.breakpoints_1d(), tol);
  const double freq = sinusoid_ ? frequency_ : freq_hint_.value_or(-1);
  if (freq < 0)
    throw ValidationError(
        "pair_density: generic density without a frequency hint; oscillation unresolvable");
  auto dens = sinusoid_
                  ? std::function<double(double)>([a = amplitude_, w = 2 * std::numbers::pi *
                                                                       frequency_](double x) {
                      return a * std::sin(w * x);
                    })
                  : density_;
  auto g = [&](double x) { return dens(x) * f(Point{x}); };
  return refine_quadrature(g, freq, tol);
}

double DensityMeasure1D::total_variation(double tol) const {
  if (sinusoid_) {
    // Split at the zeros j/(2k); each sign-constant piece integrates exactly.
    const double w = 2 * std::numbers::pi * frequency_;
    double total = 0;
    double x0 = 0;
    for (int j = 1;; ++j) {
      const double x1 = std::min(1.0, j / (2 * frequency_));
      total += std::abs(amplitude_ * (std::cos(w * x0) - std::cos(w * x1)) / w);
      x0 = x1;
      if (x1 >= 1.0) break;
    }
    return total;
  }
  const double freq = freq_hint_.value_or(-1);
  if (freq < 0)
    throw ValidationError("total_variation: generic density without a frequency hint");
  auto g = [&](double x) { return std::abs(density_(x)); };
  return refine_quadrature(g, freq, tol);
}

double DensityMeasure1D::total_mass(double tol) const {
  return pair_breakpoints({{0.0, 1.0}, {1.0, 1.0}}, tol);
}

LipFunction sawtooth_g(int n) {
  if (n < 1) throw ValidationError("sawtooth_g: n must be >= 1");
  std::vector<std::array<double, 2>> bp;
  bp.push_back({0.0, 0.0});
  for (int j = 1; j <= 2 * n; ++j) {
    const double x = (2.0 * j - 1.0) / (4.0 * n);
    const double y = (j % 2 ? 1.0 : -1.0) / (4.0 * n);
    bp.push_back({x, y});
  }
  bp.push_back({1.0, 0.0});
  return piecewise_linear_1d(MetricSpace::unit_interval(), std::move(bp));
}

}  // namespace flatnorm

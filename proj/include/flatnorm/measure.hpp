#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "flatnorm/lipschitz.hpp"
#include "flatnorm/metric_space.hpp"

namespace flatnorm {

struct Atom {
  Point point;
  double weight = 0;
};

// A finitely supported signed measure in canonical form: no duplicate points
// (per the space's equality rule), no zero weights. The zero measure is the
// empty atom list.
class DiscreteSignedMeasure {
 public:
  explicit DiscreteSignedMeasure(MetricSpace space) : space_(std::move(space)) {}
  DiscreteSignedMeasure(MetricSpace space, std::vector<Atom> atoms);

  static DiscreteSignedMeasure dirac(const MetricSpace& space, Point p, double weight = 1.0);

  const MetricSpace& space() const { return space_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }

  // (mu+, mu-), both positive, disjoint supports.
  std::pair<DiscreteSignedMeasure, DiscreteSignedMeasure> jordan() const;
  double tv_norm() const;
  double total_mass() const;  // mu(S), signed
  double pair_with(const LipFunction& f) const;

  DiscreteSignedMeasure scaled(double c) const;
  DiscreteSignedMeasure pushforward(const std::function<Point(const Point&)>& phi) const;
  // Sum of |weight| over atoms with d(point, K) > lambda.
  double mass_outside_neighborhood(const PointSet& K, double lambda) const;

  PointSet support() const;

  friend DiscreteSignedMeasure operator+(const DiscreteSignedMeasure& a,
                                         const DiscreteSignedMeasure& b);
  friend DiscreteSignedMeasure operator-(const DiscreteSignedMeasure& a,
                                         const DiscreteSignedMeasure& b);

 private:
  MetricSpace space_;
  std::vector<Atom> atoms_;
};

// A measure on [0,1] with a closed-form density. The sinusoid family
// a sin(2 pi k x) admits exact segment integration against piecewise-linear
// functions; generic densities fall back to refining quadrature and need a
// frequency hint to resolve oscillation.
class DensityMeasure1D {
 public:
  static DensityMeasure1D sinusoid(double amplitude, double frequency);
  static DensityMeasure1D generic(std::function<double(double)> density,
                                  std::optional<double> frequency_hint);

  // integral of f(x) density(x) dx over [0,1].
  double pair_with(const LipFunction& f, double tol = 1e-10) const;
  double pair_breakpoints(const std::vector<std::array<double, 2>>& breakpoints,
                          double tol) const;
  double total_variation(double tol = 1e-10) const;
  double total_mass(double tol = 1e-10) const;

  bool is_sinusoid() const { return sinusoid_; }
  double amplitude() const { return amplitude_; }
  double frequency() const { return frequency_; }

 private:
  DensityMeasure1D() = default;
  bool sinusoid_ = false;
  double amplitude_ = 0, frequency_ = 0;
  std::function<double(double)> density_;
  std::optional<double> freq_hint_;
};

// The alternating piecewise-linear witness of the Schur counterexample:
// peaks +-1/(4n) at odd multiples of 1/(4n), zero at 0 and 1; |g|_L = 1.
LipFunction sawtooth_g(int n);

}  // namespace flatnorm

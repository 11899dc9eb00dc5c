#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "flatnorm/flat_norm.hpp"
#include "flatnorm/lipschitz.hpp"
#include "flatnorm/measure.hpp"

namespace flatnorm {

// A regular Markov operator together with its dual action on functions:
// push-forward along a map, a finite mixture of push-forwards (IFS), or a
// row-stochastic kernel on a finite matrix space.
class MarkovOperator {
 public:
  static MarkovOperator pushforward_op(MetricSpace space, LipMap map, std::string label = "");
  static MarkovOperator ifs(MetricSpace space, std::vector<std::pair<LipMap, double>> branches,
                            std::string label = "");
  static MarkovOperator kernel(MetricSpace space, std::vector<std::vector<double>> matrix,
                               std::string label = "");

  const MetricSpace& space() const { return space_; }
  const std::string& label() const { return label_; }

  DiscreteSignedMeasure apply(const DiscreteSignedMeasure& mu) const;
  // U f with <P mu, f> = <mu, U f> for atomic mu.
  LipFunction dual_apply(const LipFunction& f) const;
  DiscreteSignedMeasure iterate(const DiscreteSignedMeasure& mu, int n,
                                std::size_t atom_cap = 1000000) const;
  LipFunction dual_iterate(const LipFunction& f, int n) const;

 private:
  enum class Kind { Pushforward, Ifs, Kernel };
  MarkovOperator(Kind kind, MetricSpace space, std::string label)
      : kind_(kind), space_(std::move(space)), label_(std::move(label)) {}
  Kind kind_;
  MetricSpace space_;
  std::string label_;
  LipMap map_;
  std::vector<std::pair<LipMap, double>> branches_;
  std::vector<std::vector<double>> matrix_;
};

// Per-radius modulus omega(delta) = max over the family and sampled x with
// d(x, x0) <= delta of |U f(x) - U f(x0)|. Evidence table, never a verdict.
struct ModulusTable {
  Point center;
  std::vector<double> radii;
  std::vector<double> omega;
  std::vector<std::size_t> samples;
};

ModulusTable eproperty_probe(const std::vector<MarkovOperator>& family, const LipFunction& f,
                             const Point& x0, std::vector<double> radii,
                             int samples_per_radius, std::uint64_t seed);

// Same probe, but over an already-computed dual family {U_i f}. Useful for
// iterated operators where building U^n f once is much cheaper than
// materializing P^n.
ModulusTable eproperty_probe_duals(const MetricSpace& space,
                                   const std::vector<LipFunction>& duals, const Point& x0,
                                   std::vector<double> radii, int samples_per_radius,
                                   std::uint64_t seed);

struct EquicontinuityRow {
  double input_distance = 0;   // ||mu - mu0||*_BL
  double output_distance = 0;  // max over the family of ||P mu - P mu0||*_BL
};

std::vector<EquicontinuityRow> measure_equicontinuity_probe(
    const std::vector<MarkovOperator>& family, const DiscreteSignedMeasure& mu0,
    const std::vector<DiscreteSignedMeasure>& perturbations, const NormOptions& opts = {});

struct DiracContinuityRow {
  double point_distance = 0;  // d(x, x0)
  double output_bl = 0;       // ||P delta_x - P delta_x0||*_BL
  double identity_gap = 0;    // | |Uf(x)-Uf(x0)| - |<P delta_x - P delta_x0, f>| |
};

std::vector<DiracContinuityRow> dirac_continuity_check(const MarkovOperator& op, const Point& x0,
                                                       const std::vector<double>& radii,
                                                       const LipFunction& f,
                                                       const NormOptions& opts = {});

// h(d) = 2d / (2+d): the exact BL* distance between two Diracs at distance d.
inline double dirac_pair_norm(double d) { return 2.0 * d / (2.0 + d); }

}  // namespace flatnorm

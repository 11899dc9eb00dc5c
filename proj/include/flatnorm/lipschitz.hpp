#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatnorm/metric_space.hpp"

namespace flatnorm {

// A self-map of a space with a declared Lipschitz constant. 1-d affine maps
// a*x + b carry their coefficients so that compositions with piecewise-linear
// functions stay piecewise linear (exact and cheap under iteration).
struct LipMap {
  std::function<Point(const Point&)> apply;
  double lipschitz = 1.0;
  std::optional<std::array<double, 2>> affine;  // {a, b}
};

LipMap affine_map_1d(double a, double b);

// The function vanishes outside the radius-neighborhood of `points`.
struct SupportHint {
  PointSet points;
  double radius = 0.0;
};

// A bounded Lipschitz function with declared (conservative) norm bounds.
// Declared bounds are carried through combinators, never recomputed exactly;
// empirical_lipschitz gives falsification only.
class LipFunction {
 public:
  LipFunction() = default;
  LipFunction(MetricSpace space, std::function<double(const Point&)> eval,
              double declared_sup, double declared_lip, std::string tag,
              std::optional<SupportHint> hint = {},
              std::optional<std::vector<std::array<double, 2>>> breakpoints_1d = {});

  double operator()(const Point& x) const { return eval_(x); }
  const MetricSpace& space() const { return space_; }
  double declared_sup() const { return sup_; }
  double declared_lip() const { return lip_; }
  double bl_bound() const { return sup_ + lip_; }
  double fm_bound() const { return sup_ > lip_ ? sup_ : lip_; }
  const std::optional<SupportHint>& support_hint() const { return hint_; }
  // Present for piecewise-linear functions on 1-d spaces; enables exact
  // pairing against sinusoid densities.
  const std::optional<std::vector<std::array<double, 2>>>& breakpoints_1d() const {
    return breakpoints_;
  }
  const std::string& tag() const { return tag_; }

 private:
  MetricSpace space_ = MetricSpace::unit_interval();
  std::function<double(const Point&)> eval_;
  double sup_ = 0, lip_ = 0;
  std::string tag_;
  std::optional<SupportHint> hint_;
  std::optional<std::vector<std::array<double, 2>>> breakpoints_;
};

LipFunction constant_function(const MetricSpace& space, double value);

// h_{lambda,C}(x) = [1 - d(x,C)/lambda]^+ : equals 1 on C, 0 outside C^lambda.
LipFunction hat_function(const MetricSpace& space, double lambda, const PointSet& C);

// f^lambda_{F,a}(x) = max_y a(y) [1 - d(x,y)/lambda]^+ with a(y) in [0,1].
LipFunction tent_family_function(const MetricSpace& space, const PointSet& F,
                                 const std::vector<double>& amplitudes, double lambda);

// min_i (y_i + L d(x, x_i)) clamped to [min y, max y]; interpolates the samples.
LipFunction mcshane_extend(const MetricSpace& space,
                           const std::vector<std::pair<Point, double>>& samples, double L);

// McShane extension multiplied by h_{lambda,K}; vanishes outside K^lambda.
LipFunction extend_with_compact_support(const MetricSpace& space,
                                        const std::vector<std::pair<Point, double>>& samples,
                                        double L, double lambda, const PointSet& K);

// Pointwise max; Lipschitz bound max of member bounds, not their sum.
LipFunction sup_family(const std::vector<LipFunction>& fs);

// Pointwise sum of functions with pairwise separated support hints; the
// Lipschitz bound is 2 * max of member bounds.
LipFunction disjoint_sum(const std::vector<LipFunction>& fs);

LipFunction compose_with_map(const LipFunction& f, const LipMap& phi);

// sum_i coeffs[i] * fs[i], with additive declared bounds.
LipFunction linear_combination(const std::vector<double>& coeffs,
                               const std::vector<LipFunction>& fs);

// Breakpoints (x, y) sorted by x; constant extension beyond the ends.
LipFunction piecewise_linear_1d(const MetricSpace& space,
                                std::vector<std::array<double, 2>> breakpoints);

// Finite slice of the countable tent dictionary: all amplitude assignments on
// a grid of (levels+1) values per center, per lambda, with at most
// max_subset_size active centers; then all pairwise differences and the
// constant 1. Deterministic lexicographic order.
std::vector<LipFunction> dictionary(const MetricSpace& space, const PointSet& centers,
                                    const std::vector<double>& lambdas, int amplitude_levels,
                                    std::size_t max_subset_size = static_cast<std::size_t>(-1));

// max over pairs of |f(x)-f(y)| / d(x,y); a lower bound for |f|_L.
double empirical_lipschitz(const LipFunction& f, const MetricSpace& space,
                           const std::vector<std::pair<Point, Point>>& pairs);

}  // namespace flatnorm

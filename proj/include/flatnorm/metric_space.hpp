#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace flatnorm {

// A point is a coordinate vector. Interpretation depends on the space kind:
// euclidean(dim) -> dim coordinates, unit_interval -> one coordinate in [0,1],
// discrete_naturals -> one nonnegative integer coordinate, matrix -> one index
// into the label table.
using Point = std::vector<double>;
using PointSet = std::vector<Point>;

// Shared tolerance for point equality in coordinate spaces (exact for
// integer/index kinds) and for metric-axiom checks.
inline constexpr double kPointTol = 1e-12;

struct MetricViolation {
  enum class Kind { Negative, Asymmetric, NonzeroDiagonal, OffDiagonalZero, Triangle };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;  // k only meaningful for Triangle
  std::string describe() const;
};

class MetricSpace {
 public:
  enum class Kind { Euclidean, UnitInterval, DiscreteNaturals, Matrix, Join, FunctionMetric };

  static MetricSpace euclidean(std::size_t dim);
  static MetricSpace unit_interval();
  static MetricSpace discrete_naturals();
  static MetricSpace matrix(std::vector<std::string> labels,
                            std::vector<std::vector<double>> distances);
  // d-bar = max(d, d') over the same point domain.
  static MetricSpace join(const MetricSpace& a, const MetricSpace& b);
  // d_f(x,y) = max(d0(x,y), |f(x)-f(y)|).
  static MetricSpace with_function(const MetricSpace& base,
                                   std::function<double(const Point&)> f);

  Kind kind() const;
  std::size_t point_dim() const;
  // True when point equality is exact (discrete_naturals, matrix).
  bool integral_points() const;

  double distance(const Point& x, const Point& y) const;
  bool same_point(const Point& x, const Point& y) const;
  // True when two spaces share the same underlying point domain.
  bool same_domain(const MetricSpace& other) const;
  // Throws ValidationError on dimension mismatch / index out of range.
  void check_point(const Point& x) const;

  // Matrix kind only.
  const std::vector<std::string>& labels() const;
  std::size_t matrix_size() const;
  std::vector<MetricViolation> validate() const;

 public:
  struct Node;

 private:
  explicit MetricSpace(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> node_;
};

// d(x, A) = min over a in A. Throws on empty A.
double set_distance(const MetricSpace& space, const Point& x, const PointSet& A);
// delta(C, C') = sup_{x in C} d(x, C').
double hausdorff_semidistance(const MetricSpace& space, const PointSet& C, const PointSet& Cp);
double hausdorff_distance(const MetricSpace& space, const PointSet& C, const PointSet& Cp);
// min over pairs (x in K1, y in K2) of d(x, y).
double set_separation(const MetricSpace& space, const PointSet& K1, const PointSet& K2);
// Deduplicates per the space's point-equality rule; order of first occurrence kept.
PointSet canonicalize(const MetricSpace& space, const PointSet& points);

}  // namespace flatnorm

#include "flatnorm/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "flatnorm/errors.hpp"

namespace flatnorm {

struct MetricSpace::Node {
  Kind kind;
  std::size_t dim = 1;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> dist;
  std::shared_ptr<const Node> left, right, base;
  std::function<double(const Point&)> f;
};

MetricSpace::MetricSpace(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

MetricSpace MetricSpace::euclidean(std::size_t dim) {
  if (dim == 0) throw ValidationError("euclidean: dim must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Euclidean;
  n->dim = dim;
  return MetricSpace(n);
}

MetricSpace MetricSpace::unit_interval() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::UnitInterval;
  return MetricSpace(n);
}

MetricSpace MetricSpace::discrete_naturals() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::DiscreteNaturals;
  return MetricSpace(n);
}

MetricSpace MetricSpace::matrix(std::vector<std::string> labels,
                                std::vector<std::vector<double>> distances) {
  if (labels.empty()) throw ValidationError("matrix space: empty point list");
  if (distances.size() != labels.size())
    throw ValidationError("matrix space: distance matrix size does not match points");
  for (const auto& row : distances)
    if (row.size() != labels.size())
      throw ValidationError("matrix space: distance matrix is not square");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Matrix;
  n->labels = std::move(labels);
  n->dist = std::move(distances);
  return MetricSpace(n);
}

MetricSpace MetricSpace::join(const MetricSpace& a, const MetricSpace& b) {
  if (!a.same_domain(b)) throw ValidationError("metric join: point domains differ");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Join;
  n->left = a.node_;
  n->right = b.node_;
  return MetricSpace(n);
}

MetricSpace MetricSpace::with_function(const MetricSpace& base,
                                       std::function<double(const Point&)> f) {
  if (!f) throw ValidationError("with_function: missing evaluator");
  auto n = std::make_shared<Node>();
  n->kind = Kind::FunctionMetric;
  n->base = base.node_;
  n->f = std::move(f);
  return MetricSpace(n);
}

MetricSpace::Kind MetricSpace::kind() const { return node_->kind; }

namespace {

const MetricSpace::Node* domain_root(const MetricSpace::Node* n) {
  while (true) {
    if (n->left) { n = n->left.get(); continue; }
    if (n->base) { n = n->base.get(); continue; }
    return n;
  }
}

double node_distance(const MetricSpace::Node* n, const Point& x, const Point& y) {
  using Kind = MetricSpace::Kind;
  switch (n->kind) {
    case Kind::Euclidean: {
      double s = 0;
      for (std::size_t i = 0; i < n->dim; ++i) {
        const double d = x[i] - y[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Kind::UnitInterval:
    case Kind::DiscreteNaturals:
      return std::abs(x[0] - y[0]);
    case Kind::Matrix: {
      const auto i = static_cast<std::size_t>(x[0]);
      const auto j = static_cast<std::size_t>(y[0]);
      return n->dist[i][j];
    }
    case Kind::Join:
      return std::max(node_distance(n->left.get(), x, y), node_distance(n->right.get(), x, y));
    case Kind::FunctionMetric:
      return std::max(node_distance(n->base.get(), x, y), std::abs(n->f(x) - n->f(y)));
  }
  return 0;
}

}  // namespace

std::size_t MetricSpace::point_dim() const {
  return domain_root(node_.get())->dim;
}

bool MetricSpace::integral_points() const {
  const auto k = domain_root(node_.get())->kind;
  return k == Kind::DiscreteNaturals || k == Kind::Matrix;
}

void MetricSpace::check_point(const Point& x) const {
  const Node* root = domain_root(node_.get());
  switch (root->kind) {
    case Kind::Euclidean:
      if (x.size() != root->dim) {
        std::ostringstream os;
        os << "point has " << x.size() << " coordinates, space expects " << root->dim;
        throw ValidationError(os.str());
      }
      break;
    case Kind::UnitInterval:
      if (x.size() != 1 || x[0] < -kPointTol || x[0] > 1 + kPointTol)
        throw ValidationError("point outside the unit interval");
      break;
    case Kind::DiscreteNaturals:
      if (x.size() != 1 || x[0] < 0 || std::floor(x[0]) != x[0])
        throw ValidationError("point is not a natural number");
      break;
    case Kind::Matrix: {
      if (x.size() != 1 || std::floor(x[0]) != x[0] || x[0] < 0 ||
          static_cast<std::size_t>(x[0]) >= root->labels.size())
        throw ValidationError("point index out of range for matrix space");
      break;
    }
    default:
      break;
  }
}

double MetricSpace::distance(const Point& x, const Point& y) const {
  check_point(x);
  check_point(y);
  return node_distance(node_.get(), x, y);
}

bool MetricSpace::same_point(const Point& x, const Point& y) const {
  if (x.size() != y.size()) return false;
  if (integral_points()) return x == y;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - y[i]) > kPointTol) return false;
  return true;
}

bool MetricSpace::same_domain(const MetricSpace& other) const {
  const Node* a = domain_root(node_.get());
  const Node* b = domain_root(other.node_.get());
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Euclidean:
      return a->dim == b->dim;
    case Kind::Matrix:
      return a->labels == b->labels;
    default:
      return true;
  }
}

const std::vector<std::string>& MetricSpace::labels() const {
  if (node_->kind != Kind::Matrix) throw ValidationError("labels: not a matrix space");
  return node_->labels;
}

std::size_t MetricSpace::matrix_size() const {
  if (node_->kind != Kind::Matrix) throw ValidationError("matrix_size: not a matrix space");
  return node_->labels.size();
}

std::string MetricViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Negative: os << "negative distance at (" << i << "," << j << ")"; break;
    case Kind::Asymmetric: os << "symmetry violation at (" << i << "," << j << ")"; break;
    case Kind::NonzeroDiagonal: os << "nonzero diagonal at " << i; break;
    case Kind::OffDiagonalZero: os << "zero distance between distinct points (" << i << "," << j << ")"; break;
    case Kind::Triangle:
      os << "triangle violation d(" << i << "," << k << ") > d(" << i << "," << j << ") + d("
         << j << "," << k << ")";
      break;
  }
  return os.str();
}

std::vector<MetricViolation> MetricSpace::validate() const {
  if (node_->kind != Kind::Matrix) throw ValidationError("validate: not a matrix space");
  const auto& d = node_->dist;
  const std::size_t n = d.size();
  std::vector<MetricViolation> out;
  using VK = MetricViolation::Kind;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d[i][i]) > kPointTol) out.push_back({VK::NonzeroDiagonal, i, i, 0});
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] < -kPointTol) out.push_back({VK::Negative, i, j, 0});
      if (i < j) {
        if (std::abs(d[i][j] - d[j][i]) > kPointTol) out.push_back({VK::Asymmetric, i, j, 0});
        if (std::abs(d[i][j]) <= kPointTol) out.push_back({VK::OffDiagonalZero, i, j, 0});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && i != k && d[i][k] > d[i][j] + d[j][k] + kPointTol)
          out.push_back({VK::Triangle, i, j, k});
  return out;
}

double set_distance(const MetricSpace& space, const Point& x, const PointSet& A) {
  if (A.empty()) throw ValidationError("set_distance: empty point set");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : A) best = std::min(best, space.distance(x, a));
  return best;
}

double hausdorff_semidistance(const MetricSpace& space, const PointSet& C, const PointSet& Cp) {
  if (C.empty() || Cp.empty()) throw ValidationError("hausdorff_semidistance: empty point set");
  double worst = 0;
  for (const auto& x : C) worst = std::max(worst, set_distance(space, x, Cp));
  return worst;
}

double hausdorff_distance(const MetricSpace& space, const PointSet& C, const PointSet& Cp) {
  return std::max(hausdorff_semidistance(space, C, Cp), hausdorff_semidistance(space, Cp, C));
}

double set_separation(const MetricSpace& space, const PointSet& K1, const PointSet& K2) {
  if (K1.empty() || K2.empty()) throw ValidationError("set_separation: empty point set");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : K1)
    for (const auto& y : K2) best = std::min(best, space.distance(x, y));
  return best;
}

PointSet canonicalize(const MetricSpace& space, const PointSet& points) {
  PointSet out;
  for (const auto& p : points) {
    bool seen = false;
    for (const auto& q : out)
      if (space.same_point(p, q)) { seen = true; break; }
    if (!seen) out.push_back(p);
  }
  return out;
}

}  // namespace flatnorm

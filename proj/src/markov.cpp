#include "flatnorm/markov.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "flatnorm/errors.hpp"

namespace flatnorm {

MarkovOperator MarkovOperator::pushforward_op(MetricSpace space, LipMap map, std::string label) {
  if (!map.apply) throw ValidationError("pushforward operator: missing map");
  MarkovOperator op(Kind::Pushforward, std::move(space), std::move(label));
  op.map_ = std::move(map);
  return op;
}

MarkovOperator MarkovOperator::ifs(MetricSpace space, std::vector<std::pair<LipMap, double>> branches,
                                   std::string label) {
  if (branches.empty()) throw ValidationError("ifs operator: empty branch list");
  double total = 0;
  for (const auto& [map, p] : branches) {
    if (!map.apply) throw ValidationError("ifs operator: missing map");
    if (p <= 0) throw ValidationError("ifs operator: branch probability must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("ifs operator: branch probabilities must sum to 1");
  MarkovOperator op(Kind::Ifs, std::move(space), std::move(label));
  op.branches_ = std::move(branches);
  return op;
}

MarkovOperator MarkovOperator::kernel(MetricSpace space, std::vector<std::vector<double>> matrix,
                                      std::string label) {
  if (space.kind() != MetricSpace::Kind::Matrix)
    throw ValidationError("kernel operator: requires a matrix space");
  const std::size_t n = space.matrix_size();
  if (matrix.size() != n) throw ValidationError("kernel operator: matrix size mismatch");
  for (const auto& row : matrix) {
    if (row.size() != n) throw ValidationError("kernel operator: matrix is not square");
    double s = 0;
    for (double p : row) {
      if (p < 0) throw ValidationError("kernel operator: negative entry");
      s += p;
    }
    if (std::abs(s - 1.0) > 1e-12)
      throw ValidationError("kernel operator: rows must sum to 1");
  }
  MarkovOperator op(Kind::Kernel, std::move(space), std::move(label));
  op.matrix_ = std::move(matrix);
  return op;
}

DiscreteSignedMeasure MarkovOperator::apply(const DiscreteSignedMeasure& mu) const {
  if (!mu.space().same_domain(space_))
    throw ValidationError("markov apply: measure lives on a different space");
  switch (kind_) {
    case Kind::Pushforward:
      return mu.pushforward(map_.apply);
    case Kind::Ifs: {
      std::vector<Atom> atoms;
      atoms.reserve(mu.atoms().size() * branches_.size());
      for (const auto& [map, p] : branches_)
        for (const auto& a : mu.atoms()) atoms.push_back({map.apply(a.point), p * a.weight});
      return DiscreteSignedMeasure(space_, std::move(atoms));
    }
    case Kind::Kernel: {
      const std::size_t n = space_.matrix_size();
      std::vector<double> weights(n, 0.0);
      for (const auto& a : mu.atoms()) {
        const auto i = static_cast<std::size_t>(a.point[0]);
        for (std::size_t j = 0; j < n; ++j) weights[j] += a.weight * matrix_[i][j];
      }
      std::vector<Atom> atoms;
      for (std::size_t j = 0; j < n; ++j)
        if (weights[j] != 0.0) atoms.push_back({Point{static_cast<double>(j)}, weights[j]});
      return DiscreteSignedMeasure(space_, std::move(atoms));
    }
  }
  return mu;
}

LipFunction MarkovOperator::dual_apply(const LipFunction& f) const {
  if (!f.space().same_domain(space_))
    throw ValidationError("markov dual_apply: function lives on a different space");
  switch (kind_) {
    case Kind::Pushforward:
      return compose_with_map(f, map_);
    case Kind::Ifs: {
      std::vector<double> coeffs;
      std::vector<LipFunction> parts;
      for (const auto& [map, p] : branches_) {
        coeffs.push_back(p);
        parts.push_back(compose_with_map(f, map));
      }
      return linear_combination(coeffs, parts);
    }
    case Kind::Kernel: {
      const std::size_t n = space_.matrix_size();
      std::vector<double> values(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          values[i] += matrix_[i][j] * f(Point{static_cast<double>(j)});
      // Finite space: sup and Lipschitz constants are exactly computable.
      double sup = 0, lip = 0;
      for (double v : values) sup = std::max(sup, std::abs(v));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const double d = space_.distance(Point{double(i)}, Point{double(j)});
          if (d > 0) lip = std::max(lip, std::abs(values[i] - values[j]) / d);
        }
      auto eval = [values](const Point& x) { return values[static_cast<std::size_t>(x[0])]; };
      return LipFunction(space_, std::move(eval), sup, lip, "composed");
    }
  }
  return f;
}

DiscreteSignedMeasure MarkovOperator::iterate(const DiscreteSignedMeasure& mu, int n,
                                              std::size_t atom_cap) const {
  if (n < 0) throw ValidationError("iterate: n must be nonnegative");
  DiscreteSignedMeasure out = mu;
  for (int i = 0; i < n; ++i) {
    out = apply(out);
    if (out.atoms().size() > atom_cap)
      throw CapExceededError("iterate: atom cap exceeded");
  }
  return out;
}

LipFunction MarkovOperator::dual_iterate(const LipFunction& f, int n) const {
  if (n < 0) throw ValidationError("dual_iterate: n must be nonnegative");
  LipFunction out = f;
  for (int i = 0; i < n; ++i) out = dual_apply(out);
  return out;
}

namespace {

// Points within distance delta of x0, including deterministic boundary probes.
std::vector<Point> sample_ball(const MetricSpace& space, const Point& x0, double delta, int count,
                               std::mt19937_64& rng) {
  std::vector<Point> out;
  switch (space.kind()) {
    case MetricSpace::Kind::DiscreteNaturals: {
      const long lo = std::max(0L, static_cast<long>(std::ceil(x0[0] - delta)));
      const long hi = static_cast<long>(std::floor(x0[0] + delta));
      for (long v = lo; v <= hi; ++v) out.push_back(Point{static_cast<double>(v)});
      return out;
    }
    case MetricSpace::Kind::Matrix: {
      for (std::size_t i = 0; i < space.matrix_size(); ++i) {
        Point p{static_cast<double>(i)};
        if (space.distance(p, x0) <= delta) out.push_back(std::move(p));
      }
      return out;
    }
    default:
      break;
  }
  const std::size_t dim = space.point_dim();
  const bool unit = space.kind() == MetricSpace::Kind::UnitInterval;
  auto clamp_unit = [&](Point p) {
    if (unit) p[0] = std::clamp(p[0], 0.0, 1.0);
    return p;
  };
  for (std::size_t k = 0; k < dim; ++k) {
    Point hi = x0, lo = x0;
    hi[k] += delta;
    lo[k] -= delta;
    out.push_back(clamp_unit(hi));
    out.push_back(clamp_unit(lo));
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 0; s < count; ++s) {
    Point dir(dim);
    double norm = 0;
    for (auto& v : dir) {
      v = gauss(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm == 0) continue;
    const double r = delta * std::pow(unif(rng), 1.0 / static_cast<double>(dim));
    Point p = x0;
    for (std::size_t k = 0; k < dim; ++k) p[k] += r * dir[k] / norm;
    out.push_back(clamp_unit(p));
  }
  return out;
}

}  // namespace

ModulusTable eproperty_probe(const std::vector<MarkovOperator>& family, const LipFunction& f,
                             const Point& x0, std::vector<double> radii, int samples_per_radius,
                             std::uint64_t seed) {
  if (family.empty()) throw ValidationError("eproperty_probe: empty family");
  std::vector<LipFunction> duals;
  duals.reserve(family.size());
  for (const auto& op : family) duals.push_back(op.dual_apply(f));
  return eproperty_probe_duals(family.front().space(), duals, x0, std::move(radii),
                               samples_per_radius, seed);
}

ModulusTable eproperty_probe_duals(const MetricSpace& space,
                                   const std::vector<LipFunction>& duals, const Point& x0,
                                   std::vector<double> radii, int samples_per_radius,
                                   std::uint64_t seed) {
  if (duals.empty()) throw ValidationError("eproperty_probe: empty family");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1]) throw ValidationError("eproperty_probe: radii must increase");
  if (!radii.empty() && radii.front() <= 0)
    throw ValidationError("eproperty_probe: radii must be positive");

  std::vector<double> at_center;
  at_center.reserve(duals.size());
  for (const auto& g : duals) at_center.push_back(g(x0));

  ModulusTable table;
  table.center = x0;
  table.radii = std::move(radii);
  std::mt19937_64 rng(seed);
  double running = 0;  // omega is nondecreasing: balls are nested
  for (double delta : table.radii) {
    const auto pts = sample_ball(space, x0, delta, samples_per_radius, rng);
    for (const auto& x : pts)
      for (std::size_t i = 0; i < duals.size(); ++i)
        running = std::max(running, std::abs(duals[i](x) - at_center[i]));
    table.omega.push_back(running);
    table.samples.push_back(pts.size());
  }
  return table;
}

std::vector<EquicontinuityRow> measure_equicontinuity_probe(
    const std::vector<MarkovOperator>& family, const DiscreteSignedMeasure& mu0,
    const std::vector<DiscreteSignedMeasure>& perturbations, const NormOptions& opts) {
  if (family.empty()) throw ValidationError("measure_equicontinuity_probe: empty family");
  auto check_positive = [](const DiscreteSignedMeasure& mu) {
    for (const auto& a : mu.atoms())
      if (a.weight < 0)
        throw ValidationError("measure_equicontinuity_probe: measures must be positive");
  };
  check_positive(mu0);
  std::vector<EquicontinuityRow> rows;
  for (const auto& mu : perturbations) {
    check_positive(mu);
    EquicontinuityRow row;
    row.input_distance = bl_distance(mu, mu0, opts);
    for (const auto& op : family)
      row.output_distance =
          std::max(row.output_distance, bl_distance(op.apply(mu), op.apply(mu0), opts));
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.input_distance < b.input_distance;
  });
  return rows;
}

std::vector<DiracContinuityRow> dirac_continuity_check(const MarkovOperator& op, const Point& x0,
                                                       const std::vector<double>& radii,
                                                       const LipFunction& f,
                                                       const NormOptions& opts) {
  const LipFunction uf = op.dual_apply(f);
  const auto d0 = DiscreteSignedMeasure::dirac(op.space(), x0);
  const auto pd0 = op.apply(d0);
  std::vector<DiracContinuityRow> rows;
  for (double delta : radii) {
    Point x = x0;
    x[0] += delta;
    if (op.space().kind() == MetricSpace::Kind::UnitInterval) x[0] = std::min(x[0], 1.0);
    const auto dx = DiscreteSignedMeasure::dirac(op.space(), x);
    const auto pdx = op.apply(dx);
    DiracContinuityRow row;
    row.point_distance = op.space().distance(x, x0);
    row.output_bl = bl_distance(pdx, pd0, opts);
    row.identity_gap =
        std::abs(std::abs(uf(x) - uf(x0)) - std::abs((pdx - pd0).pair_with(f)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace flatnorm

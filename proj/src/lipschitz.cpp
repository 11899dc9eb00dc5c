#include "flatnorm/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "flatnorm/errors.hpp"

namespace flatnorm {

LipFunction::LipFunction(MetricSpace space, std::function<double(const Point&)> eval,
                         double declared_sup, double declared_lip, std::string tag,
                         std::optional<SupportHint> hint,
                         std::optional<std::vector<std::array<double, 2>>> breakpoints_1d)
    : space_(std::move(space)),
      eval_(std::move(eval)),
      sup_(declared_sup),
      lip_(declared_lip),
      tag_(std::move(tag)),
      hint_(std::move(hint)),
      breakpoints_(std::move(breakpoints_1d)) {}

LipFunction constant_function(const MetricSpace& space, double value) {
  return LipFunction(space, [value](const Point&) { return value; }, std::abs(value), 0.0,
                     "constant");
}

LipFunction hat_function(const MetricSpace& space, double lambda, const PointSet& C) {
  if (lambda <= 0) throw ValidationError("hat_function: lambda must be positive");
  if (C.empty()) throw ValidationError("hat_function: empty center set");
  auto eval = [space, lambda, C](const Point& x) {
    return std::max(0.0, 1.0 - set_distance(space, x, C) / lambda);
  };
  return LipFunction(space, std::move(eval), 1.0, 1.0 / lambda, "hat",
                     SupportHint{C, lambda});
}

LipFunction tent_family_function(const MetricSpace& space, const PointSet& F,
                                 const std::vector<double>& amplitudes, double lambda) {
  if (lambda <= 0) throw ValidationError("tent_family_function: lambda must be positive");
  if (F.empty()) throw ValidationError("tent_family_function: empty center set");
  if (F.size() != amplitudes.size())
    throw ValidationError("tent_family_function: centers and amplitudes differ in length");
  double max_a = 0;
  for (double a : amplitudes) {
    if (a < 0 || a > 1) throw ValidationError("tent_family_function: amplitude outside [0,1]");
    max_a = std::max(max_a, a);
  }
  auto eval = [space, F, amplitudes, lambda](const Point& x) {
    double v = 0;
    for (std::size_t i = 0; i < F.size(); ++i) {
      const double t = amplitudes[i] * std::max(0.0, 1.0 - space.distance(x, F[i]) / lambda);
      v = std::max(v, t);
    }
    return v;
  };
  return LipFunction(space, std::move(eval), max_a, max_a / lambda, "tent",
                     SupportHint{F, lambda});
}

namespace {

void check_mcshane_compatible(const MetricSpace& space,
                              const std::vector<std::pair<Point, double>>& samples, double L) {
  if (samples.empty()) throw ValidationError("mcshane_extend: empty sample list");
  if (L <= 0) throw ValidationError("mcshane_extend: L must be positive");
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const double gap = std::abs(samples[i].second - samples[j].second);
      const double reach = L * space.distance(samples[i].first, samples[j].first);
      if (gap > reach * (1 + 1e-12) + 1e-12) {
        std::ostringstream os;
        os << "mcshane_extend: samples " << i << " and " << j << " violate |y_i - y_j| <= L d: "
           << gap << " > " << reach;
        throw ValidationError(os.str());
      }
    }
}

}  // namespace

LipFunction mcshane_extend(const MetricSpace& space,
                           const std::vector<std::pair<Point, double>>& samples, double L) {
  check_mcshane_compatible(space, samples, L);
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();
  double ymaxabs = 0;
  for (const auto& [p, y] : samples) {
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
    ymaxabs = std::max(ymaxabs, std::abs(y));
  }
  auto eval = [space, samples, L, ymin, ymax](const Point& x) {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& [p, y] : samples) v = std::min(v, y + L * space.distance(x, p));
    return std::clamp(v, ymin, ymax);
  };
  return LipFunction(space, std::move(eval), ymaxabs, L, "mcshane");
}

LipFunction extend_with_compact_support(const MetricSpace& space,
                                        const std::vector<std::pair<Point, double>>& samples,
                                        double L, double lambda, const PointSet& K) {
  if (lambda <= 0) throw ValidationError("extend_with_compact_support: lambda must be positive");
  LipFunction inner = mcshane_extend(space, samples, L);
  LipFunction hat = hat_function(space, lambda, K);
  const double sup = inner.declared_sup();
  // product rule: |fg|_L <= ||f||_inf |g|_L + |f|_L ||g||_inf
  const double lip = L + sup / lambda;
  auto eval = [inner, hat](const Point& x) { return inner(x) * hat(x); };
  return LipFunction(space, std::move(eval), sup, lip, "mcshane", SupportHint{K, lambda});
}

LipFunction sup_family(const std::vector<LipFunction>& fs) {
  if (fs.empty()) throw ValidationError("sup_family: empty family");
  const MetricSpace& space = fs.front().space();
  double sup = 0, lip = 0;
  for (const auto& f : fs) {
    if (!f.space().same_domain(space)) throw ValidationError("sup_family: space mismatch");
    sup = std::max(sup, f.declared_sup());
    lip = std::max(lip, f.declared_lip());
  }
  auto eval = [fs](const Point& x) {
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& f : fs) v = std::max(v, f(x));
    return v;
  };
  return LipFunction(space, std::move(eval), sup, lip, "sup");
}

LipFunction disjoint_sum(const std::vector<LipFunction>& fs) {
  if (fs.empty()) throw ValidationError("disjoint_sum: empty family");
  const MetricSpace& space = fs.front().space();
  double sup = 0, lip = 0;
  for (const auto& f : fs) {
    if (!f.space().same_domain(space)) throw ValidationError("disjoint_sum: space mismatch");
    if (!f.support_hint())
      throw ValidationError("disjoint_sum: every summand needs a support hint");
    sup = std::max(sup, f.declared_sup());
    lip = std::max(lip, f.declared_lip());
  }
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      const auto& a = *fs[i].support_hint();
      const auto& b = *fs[j].support_hint();
      const double sep = set_separation(space, a.points, b.points);
      if (sep <= a.radius + b.radius) {
        std::ostringstream os;
        os << "disjoint_sum: supports of summands " << i << " and " << j << " overlap";
        throw ValidationError(os.str());
      }
    }
  auto eval = [fs](const Point& x) {
    double v = 0;
    for (const auto& f : fs) v += f(x);
    return v;
  };
  return LipFunction(space, std::move(eval), sup, 2 * lip, "disjoint_sum");
}

LipMap affine_map_1d(double a, double b) {
  LipMap m;
  m.apply = [a, b](const Point& x) { return Point{a * x[0] + b}; };
  m.lipschitz = std::abs(a);
  m.affine = {{a, b}};
  return m;
}

LipFunction compose_with_map(const LipFunction& f, const LipMap& phi) {
  if (!phi.apply) throw ValidationError("compose_with_map: missing map");
  if (f.breakpoints_1d() && phi.affine) {
    // f(a*x + b) is piecewise linear with breakpoints at x = (t - b) / a.
    const auto [a, b] = *phi.affine;
    if (a == 0.0)
      return piecewise_linear_1d(f.space(), {{0.0, f(Point{b})}});
    std::vector<std::array<double, 2>> bp;
    bp.reserve(f.breakpoints_1d()->size());
    for (const auto& [t, y] : *f.breakpoints_1d()) bp.push_back({(t - b) / a, y});
    return piecewise_linear_1d(f.space(), std::move(bp));
  }
  auto inner = f;
  auto apply = phi.apply;
  auto eval = [inner, apply](const Point& x) { return inner(apply(x)); };
  return LipFunction(f.space(), std::move(eval), f.declared_sup(),
                     f.declared_lip() * phi.lipschitz, "composed");
}

LipFunction linear_combination(const std::vector<double>& coeffs,
                               const std::vector<LipFunction>& fs) {
  if (fs.empty() || coeffs.size() != fs.size())
    throw ValidationError("linear_combination: length mismatch or empty family");
  const MetricSpace& space = fs.front().space();
  double sup = 0, lip = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!fs[i].space().same_domain(space))
      throw ValidationError("linear_combination: space mismatch");
    sup += std::abs(coeffs[i]) * fs[i].declared_sup();
    lip += std::abs(coeffs[i]) * fs[i].declared_lip();
  }
  bool all_pl = true;
  for (const auto& f : fs)
    if (!f.breakpoints_1d()) all_pl = false;
  if (all_pl) {
    // The sum of piecewise-linear functions is piecewise linear on the union
    // grid; sampling there reconstructs it exactly (constant extension of each
    // term beyond its own grid makes the tails constant too).
    std::vector<double> grid;
    for (const auto& f : fs)
      for (const auto& [t, y] : *f.breakpoints_1d()) grid.push_back(t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<std::array<double, 2>> bp;
    bp.reserve(grid.size());
    for (double t : grid) {
      double v = 0;
      for (std::size_t i = 0; i < fs.size(); ++i) v += coeffs[i] * fs[i](Point{t});
      bp.push_back({t, v});
    }
    return piecewise_linear_1d(space, std::move(bp));
  }
  auto eval = [coeffs, fs](const Point& x) {
    double v = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) v += coeffs[i] * fs[i](x);
    return v;
  };
  return LipFunction(space, std::move(eval), sup, lip, "composed");
}

LipFunction piecewise_linear_1d(const MetricSpace& space,
                                std::vector<std::array<double, 2>> breakpoints) {
  if (space.point_dim() != 1)
    throw ValidationError("piecewise_linear_1d: requires a one-dimensional space");
  if (breakpoints.empty()) throw ValidationError("piecewise_linear_1d: no breakpoints");
  std::sort(breakpoints.begin(), breakpoints.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (breakpoints[i][0] - breakpoints[i - 1][0] <= 0)
      throw ValidationError("piecewise_linear_1d: duplicate breakpoint abscissa");
  double sup = 0, lip = 0;
  for (const auto& [x, y] : breakpoints) sup = std::max(sup, std::abs(y));
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    lip = std::max(lip, std::abs(breakpoints[i][1] - breakpoints[i - 1][1]) /
                            (breakpoints[i][0] - breakpoints[i - 1][0]));
  auto bp = breakpoints;
  auto eval = [bp](const Point& p) {
    const double x = p[0];
    if (x <= bp.front()[0]) return bp.front()[1];
    if (x >= bp.back()[0]) return bp.back()[1];
    auto it = std::upper_bound(bp.begin(), bp.end(), x,
                               [](double v, const auto& b) { return v < b[0]; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (x - lo[0]) / (hi[0] - lo[0]);
    return lo[1] + t * (hi[1] - lo[1]);
  };
  return LipFunction(space, std::move(eval), sup, lip, "piecewise_linear_1d", {},
                     std::move(breakpoints));
}

std::vector<LipFunction> dictionary(const MetricSpace& space, const PointSet& centers,
                                    const std::vector<double>& lambdas, int amplitude_levels,
                                    std::size_t max_subset_size) {
  if (centers.empty()) throw ValidationError("dictionary: empty center set");
  if (amplitude_levels < 1) throw ValidationError("dictionary: amplitude_levels must be >= 1");
  for (double l : lambdas)
    if (l <= 0) throw ValidationError("dictionary: lambda must be positive");

  // Base family: one entry per (lambda, amplitude tuple), lexicographic order.
  struct Base {
    double lambda;
    std::vector<double> amps;  // all-zero tuple encodes the zero function
    LipFunction f;
  };
  std::vector<Base> base;
  const std::size_t n = centers.size();
  std::vector<int> idx(n, 0);
  for (double lambda : lambdas) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<double> amps(n);
      std::size_t active = 0;
      for (std::size_t i = 0; i < n; ++i) {
        amps[i] = static_cast<double>(idx[i]) / amplitude_levels;
        if (idx[i] > 0) ++active;
      }
      if (active <= max_subset_size) {
        LipFunction f = active == 0 ? constant_function(space, 0.0)
                                    : tent_family_function(space, centers, amps, lambda);
        base.push_back({lambda, std::move(amps), std::move(f)});
      }
      std::size_t pos = n;
      while (pos > 0) {
        if (++idx[pos - 1] <= amplitude_levels) break;
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }

  // F = F+ - F+ plus the constant 1; identical zero differences collapse.
  std::vector<LipFunction> out;
  bool zero_emitted = false;
  for (const auto& a : base)
    for (const auto& b : base) {
      if (a.lambda == b.lambda && a.amps == b.amps) {
        if (zero_emitted) continue;
        zero_emitted = true;
        out.push_back(constant_function(space, 0.0));
        continue;
      }
      out.push_back(linear_combination({1.0, -1.0}, {a.f, b.f}));
    }
  out.push_back(constant_function(space, 1.0));
  return out;
}

double empirical_lipschitz(const LipFunction& f, const MetricSpace& space,
                           const std::vector<std::pair<Point, Point>>& pairs) {
  double best = 0;
  for (const auto& [x, y] : pairs) {
    const double d = space.distance(x, y);
    if (d <= 0) throw ValidationError("empirical_lipschitz: coincident pair");
    best = std::max(best, std::abs(f(x) - f(y)) / d);
  }
  return best;
}

}  // namespace flatnorm

#include "flatnorm/flat_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "flatnorm/errors.hpp"
#include "flatnorm/simplex.hpp"

namespace flatnorm {

namespace {

// Ordered pair (i,j) is redundant when the path through some k dominates:
// d_ik + d_kj <= d_ij forces f_i - f_j <= v d_ij from the kept constraints.
// For the FM ball, pairs with d_ij >= 2 are implied by |f| <= u <= 1.
std::vector<std::pair<std::size_t, std::size_t>> kept_pairs(
    const std::vector<std::vector<double>>& d, Ball ball) {
  const std::size_t m = d.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (ball == Ball::FM && d[i][j] >= 2.0) continue;
      bool redundant = false;
      for (std::size_t k = 0; k < m && !redundant; ++k)
        if (k != i && k != j && d[i][k] + d[k][j] <= d[i][j] + 1e-12 * std::max(1.0, d[i][j]))
          redundant = true;
      if (!redundant) pairs.emplace_back(i, j);
    }
  return pairs;
}

}  // namespace

NormResult dual_norm(const DiscreteSignedMeasure& mu, Ball ball, const NormOptions& opts) {
  NormResult out;
  out.ball = ball;
  const auto& atoms = mu.atoms();
  const std::size_t m = atoms.size();
  if (m == 0) return out;
  if (m > opts.support_cap) {
    out.status = SolveStatus::SizeExceeded;
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  std::vector<std::vector<double>> d(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      d[i][j] = d[j][i] = mu.space().distance(atoms[i].point, atoms[j].point);
      if (d[i][j] <= 0) {
        out.status = SolveStatus::InfeasibleData;
        out.value = std::numeric_limits<double>::quiet_NaN();
        return out;
      }
    }

  // Variables: f_i split as f_i^+ - f_i^-, then u (sup bound), v (Lip bound).
  const std::size_t iu = 2 * m, iv = 2 * m + 1, n = 2 * m + 2;
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    c[i] = atoms[i].weight;
    c[m + i] = -atoms[i].weight;
  }
  std::vector<std::vector<double>> rows;
  std::vector<double> b;
  for (const auto& [i, j] : kept_pairs(d, ball)) {
    std::vector<double> r(n, 0.0);
    r[i] = 1.0;
    r[m + i] = -1.0;
    r[j] = -1.0;
    r[m + j] = 1.0;
    r[iv] = -d[i][j];
    rows.push_back(std::move(r));
    b.push_back(0.0);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> r(n, 0.0);
    r[i] = 1.0;
    r[m + i] = -1.0;
    r[iu] = -1.0;
    rows.push_back(r);
    b.push_back(0.0);
    for (auto& v : r) v = -v;
    r[iu] = -1.0;
    rows.push_back(std::move(r));
    b.push_back(0.0);
  }
  if (ball == Ball::BL) {
    std::vector<double> r(n, 0.0);
    r[iu] = 1.0;
    r[iv] = 1.0;
    rows.push_back(std::move(r));
    b.push_back(1.0);
  } else {
    std::vector<double> r1(n, 0.0), r2(n, 0.0);
    r1[iu] = 1.0;
    r2[iv] = 1.0;
    rows.push_back(std::move(r1));
    b.push_back(1.0);
    rows.push_back(std::move(r2));
    b.push_back(1.0);
  }

  const SimplexResult sol = simplex_maximize(c, rows, b);
  if (sol.status != SimplexResult::Status::Optimal) {
    out.status = SolveStatus::InfeasibleData;
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.value = sol.value;
  out.witness.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    out.witness.emplace_back(atoms[i].point, sol.x[i] - sol.x[m + i]);
  return out;
}

double bl_distance(const DiscreteSignedMeasure& mu, const DiscreteSignedMeasure& nu,
                   const NormOptions& opts) {
  return dual_norm(mu - nu, Ball::BL, opts).value;
}

double fm_distance(const DiscreteSignedMeasure& mu, const DiscreteSignedMeasure& nu,
                   const NormOptions& opts) {
  return dual_norm(mu - nu, Ball::FM, opts).value;
}

namespace {

struct GridSearch {
  Ball ball;
  int R;
  std::size_t m;
  std::vector<double> w;                  // sorted by |w| descending
  std::vector<std::vector<double>> dist;  // matching order
  std::vector<double> f;                  // fixed values, f[0..depth-1]
  double best = -std::numeric_limits<double>::infinity();

  double grid_value(long q) const { return -1.0 + 2.0 * static_cast<double>(q) / R; }

  bool feasible(double t, std::size_t k, double A, double B) const {
    double s = B;
    for (std::size_t j = 0; j < k; ++j) s = std::max(s, std::abs(t - f[j]) / dist[k][j]);
    if (ball == Ball::BL) return std::max(A, std::abs(t)) + s <= 1.0 + 1e-12;
    return std::abs(t) <= 1.0 + 1e-12 && s <= 1.0 + 1e-12;
  }

  // Necessary-condition interval for coordinate k against the fixed values;
  // the exact feasible set (an interval, by convexity) lies inside it.
  bool super_interval(std::size_t k, std::size_t depth, double A, double B, double& lo,
                      double& hi) const {
    if (ball == Ball::BL) {
      if (A + B > 1.0 + 1e-12) return false;
      lo = -(1.0 - B);
      hi = 1.0 - B;
      for (std::size_t j = 0; j < depth; ++j) {
        const double reach = (1.0 - A) * dist[k][j];
        lo = std::max(lo, f[j] - reach);
        hi = std::min(hi, f[j] + reach);
      }
    } else {
      lo = -1.0;
      hi = 1.0;
      for (std::size_t j = 0; j < depth; ++j) {
        lo = std::max(lo, f[j] - dist[k][j]);
        hi = std::min(hi, f[j] + dist[k][j]);
      }
    }
    return lo <= hi + 1e-12;
  }

  bool grid_range(double lo, double hi, long& qlo, long& qhi) const {
    qlo = static_cast<long>(std::ceil((lo + 1.0) * R / 2.0 - 1e-9));
    qhi = static_cast<long>(std::floor((hi + 1.0) * R / 2.0 + 1e-9));
    qlo = std::max(qlo, 0L);
    qhi = std::min(qhi, static_cast<long>(R));
    return qlo <= qhi;
  }

  // Exact maximum of w_k t_k + w_l t_l over the box [lo,hi]^2 intersected
  // with |t_k - t_l| <= c; a valid relaxation of any feasible completion.
  bool pair_bound(std::size_t k, std::size_t l, double lok, double hik, double lol,
                  double hil, double A, double& bound) const {
    const double c = (ball == Ball::BL ? (1.0 - A) : 1.0) * dist[k][l] + 1e-12;
    const double tk = w[k] >= 0 ? hik : lok;
    const double tl = w[l] >= 0 ? hil : lol;
    if (std::abs(tk - tl) <= c) {
      bound = w[k] * tk + w[l] * tl;
      return true;
    }
    bool any = false;
    bound = -std::numeric_limits<double>::infinity();
    for (double s : {c, -c}) {  // boundary line t_k = t_l + s clipped to the box
      const double a = std::max(lol, lok - s), b = std::min(hil, hik - s);
      if (a > b) continue;
      any = true;
      for (double t : {a, b}) bound = std::max(bound, w[k] * (t + s) + w[l] * t);
    }
    return any;
  }

  // Optimistic completion value for coordinates depth..m-1: per-coordinate
  // interval bounds sharpened by pairing up the remaining coordinates.
  bool upper_bound(std::size_t depth, double A, double B, double& bound) const {
    const std::size_t r = m - depth;
    double lo[4], hi[4], single[4];
    for (std::size_t k = depth; k < m; ++k) {
      if (!super_interval(k, depth, A, B, lo[k - depth], hi[k - depth])) return false;
      single[k - depth] = std::max(w[k] * lo[k - depth], w[k] * hi[k - depth]);
    }
    auto pair = [&](std::size_t a, std::size_t b, double& out) {
      return pair_bound(depth + a, depth + b, lo[a], hi[a], lo[b], hi[b], A, out);
    };
    if (r == 1) {
      bound = single[0];
    } else if (r == 2) {
      if (!pair(0, 1, bound)) return false;
    } else if (r == 3) {
      bound = std::numeric_limits<double>::infinity();
      const int pairs[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
      for (const auto& p : pairs) {
        double pb;
        if (!pair(p[0], p[1], pb)) return false;
        bound = std::min(bound, pb + single[p[2]]);
      }
    } else {
      bound = std::numeric_limits<double>::infinity();
      const int match[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
      for (const auto& p : match) {
        double pa, pb;
        if (!pair(p[0], p[1], pa) || !pair(p[2], p[3], pb)) return false;
        bound = std::min(bound, pa + pb);
      }
    }
    return true;
  }

  void dfs(std::size_t depth, double partial, double A, double B) {
    double lo, hi;
    if (!super_interval(depth, depth, A, B, lo, hi)) return;
    long qlo, qhi;
    if (!grid_range(lo, hi, qlo, qhi)) return;

    if (depth + 1 == m) {
      // Objective is monotone in the last coordinate: scan from the preferred
      // end; the first exactly-feasible grid point is this branch's optimum.
      const bool from_high = w[depth] >= 0;
      for (long q = from_high ? qhi : qlo; q >= qlo && q <= qhi; q += from_high ? -1 : 1) {
        const double t = grid_value(q);
        if (feasible(t, depth, A, B)) {
          best = std::max(best, partial + w[depth] * t);
          return;
        }
      }
      return;
    }

    const bool from_high = w[depth] >= 0;
    for (long q = from_high ? qhi : qlo; q >= qlo && q <= qhi; q += from_high ? -1 : 1) {
      const double t = grid_value(q);
      if (!feasible(t, depth, A, B)) continue;
      f[depth] = t;
      double slope = B;
      for (std::size_t j = 0; j < depth; ++j)
        slope = std::max(slope, std::abs(t - f[j]) / dist[depth][j]);
      const double na = std::max(A, std::abs(t));
      double rest;
      if (upper_bound(depth + 1, na, slope, rest) && partial + w[depth] * t + rest > best)
        dfs(depth + 1, partial + w[depth] * t, na, slope);
    }
  }
};

}  // namespace

double brute_force_norm(const DiscreteSignedMeasure& mu, Ball ball, int grid_resolution) {
  const auto& atoms = mu.atoms();
  if (atoms.size() > 4) throw ValidationError("brute_force_norm: support larger than 4");
  if (grid_resolution < 1) throw ValidationError("brute_force_norm: grid_resolution must be >= 1");
  if (atoms.empty()) return 0.0;

  GridSearch gs;
  gs.ball = ball;
  gs.R = grid_resolution;
  gs.m = atoms.size();
  std::vector<std::size_t> order(gs.m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(atoms[a].weight) > std::abs(atoms[b].weight);
  });
  gs.w.resize(gs.m);
  gs.dist.assign(gs.m, std::vector<double>(gs.m, 0.0));
  for (std::size_t i = 0; i < gs.m; ++i) {
    gs.w[i] = atoms[order[i]].weight;
    for (std::size_t j = 0; j < gs.m; ++j)
      if (i != j)
        gs.dist[i][j] = mu.space().distance(atoms[order[i]].point, atoms[order[j]].point);
  }
  gs.f.assign(gs.m, 0.0);
  gs.dfs(0, 0.0, 0.0, 0.0);
  return gs.best;
}

}  // namespace flatnorm

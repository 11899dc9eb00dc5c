#include "flatnorm/simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "flatnorm/errors.hpp"

namespace flatnorm {

namespace {
constexpr double kCostTol = 1e-10;
constexpr double kPivotTol = 1e-11;
}  // namespace

SimplexResult simplex_maximize(const std::vector<double>& c,
                               const std::vector<std::vector<double>>& rows,
                               const std::vector<double>& b) {
  const std::size_t m = rows.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw ValidationError("simplex: rhs length mismatch");
  for (const auto& r : rows)
    if (r.size() != n) throw ValidationError("simplex: row length mismatch");
  for (double v : b)
    if (v < 0) throw ValidationError("simplex: negative rhs not supported");

  // Tableau: (m+1) x (n+m+1); row 0 holds reduced costs (z-row), last column rhs.
  const std::size_t cols = n + m + 1;
  std::vector<double> t((m + 1) * cols, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return t[i * cols + j]; };
  for (std::size_t j = 0; j < n; ++j) at(0, j) = c[j];
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i + 1, j) = rows[i][j];
    at(i + 1, n + i) = 1.0;
    at(i + 1, cols - 1) = b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  const std::size_t max_iter = 200 * (m + n) + 20000;
  const std::size_t bland_after = 10 * (m + n) + 2000;
  SimplexResult res;
  for (std::size_t iter = 0;; ++iter) {
    if (iter >= max_iter) {
      res.status = SimplexResult::Status::IterationLimit;
      break;
    }
    // Entering column.
    std::size_t enter = cols;
    if (iter < bland_after) {
      double best = kCostTol;
      for (std::size_t j = 0; j + 1 < cols; ++j)
        if (at(0, j) > best) {
          best = at(0, j);
          enter = j;
        }
    } else {
      for (std::size_t j = 0; j + 1 < cols; ++j)
        if (at(0, j) > kCostTol) {
          enter = j;
          break;
        }
    }
    if (enter == cols) {
      res.status = SimplexResult::Status::Optimal;
      break;
    }
    // Leaving row: min ratio, ties to the smallest basis index (Bland-safe).
    std::size_t leave = 0;
    double best_ratio = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 1; i <= m; ++i) {
      const double a = at(i, enter);
      if (a > kPivotTol) {
        const double ratio = at(i, cols - 1) / a;
        if (!found || ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && basis[i - 1] < basis[leave - 1])) {
          best_ratio = ratio;
          leave = i;
          found = true;
        }
      }
    }
    if (!found) {
      res.status = SimplexResult::Status::Unbounded;
      break;
    }
    // Pivot.
    const double piv = at(leave, enter);
    for (std::size_t j = 0; j < cols; ++j) at(leave, j) /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = at(i, enter);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) at(i, j) -= factor * at(leave, j);
      at(i, enter) = 0.0;
    }
    basis[leave - 1] = enter;
  }

  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = at(i + 1, cols - 1);
  res.value = -at(0, cols - 1);
  return res;
}

}  // namespace flatnorm

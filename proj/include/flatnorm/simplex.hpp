#pragma once

#include <vector>

namespace flatnorm {

// Dense tableau simplex for: maximize c.x subject to A x <= b, x >= 0,
// with b >= 0 (the slack basis is the starting feasible point). Pricing is
// most-positive reduced cost, switching to Bland's rule after a stall
// threshold to break cycles.
struct SimplexResult {
  enum class Status { Optimal, Unbounded, IterationLimit };
  Status status = Status::Optimal;
  double value = 0;
  std::vector<double> x;
};

SimplexResult simplex_maximize(const std::vector<double>& c,
                               const std::vector<std::vector<double>>& rows,
                               const std::vector<double>& b);

}  // namespace flatnorm

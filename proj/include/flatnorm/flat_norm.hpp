#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "flatnorm/measure.hpp"

namespace flatnorm {

enum class Ball { BL, FM };

enum class SolveStatus { Optimal, InfeasibleData, SizeExceeded };

struct NormResult {
  double value = 0;
  // Optimal witness function values on the support; any feasible maximizer.
  std::vector<std::pair<Point, double>> witness;
  Ball ball = Ball::BL;
  SolveStatus status = SolveStatus::Optimal;
};

struct NormOptions {
  std::size_t support_cap = 300;
  double tol = 1e-9;
};

// sup { <mu, f> : f in the unit ball of ||.||_BL or ||.||_FM }, computed as an
// LP over function values on the support (any feasible assignment McShane-
// extends to all of S with the same bounds).
NormResult dual_norm(const DiscreteSignedMeasure& mu, Ball ball, const NormOptions& opts = {});

inline NormResult bl_dual_norm(const DiscreteSignedMeasure& mu, const NormOptions& opts = {}) {
  return dual_norm(mu, Ball::BL, opts);
}
inline NormResult fm_dual_norm(const DiscreteSignedMeasure& mu, const NormOptions& opts = {}) {
  return dual_norm(mu, Ball::FM, opts);
}

double bl_distance(const DiscreteSignedMeasure& mu, const DiscreteSignedMeasure& nu,
                   const NormOptions& opts = {});
double fm_distance(const DiscreteSignedMeasure& mu, const DiscreteSignedMeasure& nu,
                   const NormOptions& opts = {});

// Independent oracle: exact maximum of <mu, f> over function values on the
// grid {-1, -1 + 2/R, ..., 1}, supports of size <= 4. Branch-and-bound over
// the grid; the returned value equals the exhaustive grid scan.
double brute_force_norm(const DiscreteSignedMeasure& mu, Ball ball, int grid_resolution);

}  // namespace flatnorm

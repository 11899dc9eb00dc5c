#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatnorm/flat_norm.hpp"
#include "flatnorm/markov.hpp"
#include "flatnorm/measure.hpp"

namespace flatnorm {

// A machine-readable experiment result: named parameter set plus per-index
// tables stored as column arrays. Deterministic under a fixed seed.
struct ExperimentReport {
  std::string name;
  nlohmann::ordered_json params;
  nlohmann::ordered_json tables;
  nlohmann::ordered_json summary;
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
};

struct MeasureSequence {
  std::function<DiscreteSignedMeasure(int)> generate;
  std::optional<double> tv_bound;
  int n_min = 1;
  int n_max = 1;
};

// Per-dictionary-function tail oscillation over the window [n_max/2, n_max],
// plus the flat-distance tail over the same window.
ExperimentReport dictionary_convergence_scan(const MeasureSequence& seq,
                                             const std::vector<LipFunction>& dict, int n_max,
                                             const NormOptions& opts = {});

// Table R -> sup_{n <= n_max} |mu_n|(S \ B(center, R)).
ExperimentReport escaping_mass_profile(const MeasureSequence& seq, const Point& center,
                                       const std::vector<double>& radii, int n_max);

struct ClusterWitness {
  int index = 0;
  PointSet cluster;
  double mass = 0;
};

// Greedy search for epsilon-separated mass clusters: per measure, a maximal
// single-linkage cluster of mass >= epsilon separated by more than epsilon
// from all previously selected clusters. nullopt when fewer than 2 found.
std::optional<std::vector<ClusterWitness>> find_separated_clusters(
    const std::vector<DiscreteSignedMeasure>& measures, double epsilon);

// Verifies both inequalities on an emitted witness list.
bool verify_cluster_witnesses(const std::vector<DiscreteSignedMeasure>& measures,
                              const std::vector<ClusterWitness>& witnesses, double epsilon);

struct NeighborhoodSet {
  PointSet base;
  double radius = 0;
};

// Sparse subsequence selection with stage-halving mass budgets; every index in
// the result places mass < epsilon on the union of the other selected sets.
std::vector<int> select_sparse_subsequence(const std::vector<DiscreteSignedMeasure>& measures,
                                           const std::vector<NeighborhoodSet>& sets,
                                           double epsilon);

bool verify_sparse_subsequence(const std::vector<DiscreteSignedMeasure>& measures,
                               const std::vector<NeighborhoodSet>& sets,
                               const std::vector<int>& selected, double epsilon);

// The oscillating-density counterexample: pairs mu_n = n sin(2 pi n x) dx with
// its sawtooth witness (constant pairing 1/pi^2), certifies the induced lower
// bound on ||mu_n||*_BL, and tabulates decaying pairings and the exact TV.
ExperimentReport counterexample_3_2(const std::vector<int>& n_values);

// The three fixed decay-probe functions used by counterexample_3_2.
std::vector<LipFunction> decay_dictionary();

// mu_n = delta_n - delta_{n+1/n} on the line: LP value vs the closed form
// 2/(2n+1), with the Jordan parts' pairings against a fixed hat at 0.
ExperimentReport dirac_drift_demo(int n_max, const NormOptions& opts = {});

// Random signed measures on {0..m-1} in the naturals: empirical range of
// bl_dual_norm / tv_norm, bounded below by 1/3.
ExperimentReport discrete_l1_demo(int m, int trials, std::uint64_t seed,
                                  const NormOptions& opts = {});

}  // namespace flatnorm

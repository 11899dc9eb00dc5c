#include "flatnorm/schur_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "flatnorm/errors.hpp"

namespace flatnorm {

nlohmann::ordered_json ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["params"] = params.is_null() ? nlohmann::ordered_json::object() : params;
  j["seed"] = seed;
  j["tables"] = tables;
  j["summary"] = summary.is_null() ? nlohmann::ordered_json::object() : summary;
  return j;
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& [key, col] : tables.items()) {
    os << (first ? "" : ",") << key;
    first = false;
  }
  os << "\n";
  std::size_t rows = 0;
  for (const auto& [key, col] : tables.items()) rows = std::max(rows, col.size());
  for (std::size_t r = 0; r < rows; ++r) {
    first = true;
    for (const auto& [key, col] : tables.items()) {
      os << (first ? "" : ",");
      first = false;
      if (r < col.size()) os << col[r].dump();
    }
    os << "\n";
  }
  return os.str();
}

ExperimentReport dictionary_convergence_scan(const MeasureSequence& seq,
                                             const std::vector<LipFunction>& dict, int n_max,
                                             const NormOptions& opts) {
  if (dict.empty()) throw ValidationError("dictionary_convergence_scan: empty dictionary");
  ExperimentReport rep;
  rep.name = "dictionary_convergence_scan";
  rep.params["n_max"] = n_max;
  rep.params["dictionary_size"] = dict.size();

  const int lo = std::max(seq.n_min, n_max / 2);
  std::vector<DiscreteSignedMeasure> window;
  std::vector<int> indices;
  std::vector<std::vector<double>> pairings(dict.size());
  for (int n = seq.n_min; n <= n_max; ++n) {
    auto mu = seq.generate(n);
    if (seq.tv_bound && mu.tv_norm() > *seq.tv_bound + 1e-9)
      throw ValidationError("dictionary_convergence_scan: declared TV bound violated");
    indices.push_back(n);
    for (std::size_t k = 0; k < dict.size(); ++k) pairings[k].push_back(mu.pair_with(dict[k]));
    if (n >= lo) window.push_back(std::move(mu));
  }

  rep.tables["n"] = indices;
  for (std::size_t k = 0; k < dict.size(); ++k)
    rep.tables["pairing_f" + std::to_string(k)] = pairings[k];

  std::vector<double> osc;
  for (std::size_t k = 0; k < dict.size(); ++k) {
    double mn = pairings[k].back(), mx = pairings[k].back();
    for (int n = lo; n <= n_max; ++n) {
      const double v = pairings[k][static_cast<std::size_t>(n - seq.n_min)];
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    osc.push_back(mx - mn);
  }
  double flat_tail = 0;
  for (std::size_t i = 0; i < window.size(); ++i)
    for (std::size_t j = i + 1; j < window.size(); ++j)
      flat_tail = std::max(flat_tail, bl_distance(window[i], window[j], opts));
  rep.summary["window_lo"] = lo;
  rep.summary["tail_oscillation"] = osc;
  rep.summary["flat_tail"] = flat_tail;
  return rep;
}

ExperimentReport escaping_mass_profile(const MeasureSequence& seq, const Point& center,
                                       const std::vector<double>& radii, int n_max) {
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw ValidationError("escaping_mass_profile: radii must increase");
  ExperimentReport rep;
  rep.name = "escaping_mass_profile";
  rep.params["n_max"] = n_max;
  std::vector<DiscreteSignedMeasure> ms;
  for (int n = seq.n_min; n <= n_max; ++n) ms.push_back(seq.generate(n));
  std::vector<double> profile;
  for (double r : radii) {
    double worst = 0;
    for (const auto& mu : ms)
      worst = std::max(worst, mu.mass_outside_neighborhood({center}, r));
    profile.push_back(worst);
  }
  rep.tables["radius"] = radii;
  rep.tables["escaping_mass"] = profile;
  return rep;
}

namespace {

// Single-linkage clusters of the support at threshold epsilon.
std::vector<std::vector<std::size_t>> linkage_clusters(const DiscreteSignedMeasure& mu,
                                                       double epsilon) {
  const auto& atoms = mu.atoms();
  const std::size_t n = atoms.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (mu.space().distance(atoms[i].point, atoms[j].point) <= epsilon)
        parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  return groups;
}

}  // namespace

std::optional<std::vector<ClusterWitness>> find_separated_clusters(
    const std::vector<DiscreteSignedMeasure>& measures, double epsilon) {
  if (epsilon <= 0) throw ValidationError("find_separated_clusters: epsilon must be positive");
  for (const auto& mu : measures)
    for (const auto& a : mu.atoms())
      if (a.weight < 0)
        throw ValidationError("find_separated_clusters: measures must be positive");

  std::vector<ClusterWitness> out;
  for (std::size_t n = 0; n < measures.size(); ++n) {
    const auto& mu = measures[n];
    if (mu.is_zero()) continue;
    auto groups = linkage_clusters(mu, epsilon);
    // Heaviest qualifying cluster first.
    std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
      auto mass = [&](const auto& g) {
        double s = 0;
        for (auto i : g) s += mu.atoms()[i].weight;
        return s;
      };
      return mass(a) > mass(b);
    });
    for (const auto& g : groups) {
      double mass = 0;
      PointSet pts;
      for (auto i : g) {
        mass += mu.atoms()[i].weight;
        pts.push_back(mu.atoms()[i].point);
      }
      if (mass < epsilon) continue;
      bool separated = true;
      for (const auto& w : out)
        if (set_separation(mu.space(), pts, w.cluster) <= epsilon) {
          separated = false;
          break;
        }
      if (separated) {
        out.push_back({static_cast<int>(n), std::move(pts), mass});
        break;
      }
    }
  }
  if (out.size() < 2) return std::nullopt;
  return out;
}

bool verify_cluster_witnesses(const std::vector<DiscreteSignedMeasure>& measures,
                              const std::vector<ClusterWitness>& witnesses, double epsilon) {
  for (const auto& w : witnesses) {
    if (w.mass < epsilon - 1e-12) return false;
    // Reported mass must match the measure on the cluster.
    double mass = 0;
    const auto& mu = measures[static_cast<std::size_t>(w.index)];
    for (const auto& a : mu.atoms())
      if (set_distance(mu.space(), a.point, w.cluster) == 0.0) mass += a.weight;
    if (std::abs(mass - w.mass) > 1e-9) return false;
  }
  for (std::size_t i = 0; i < witnesses.size(); ++i)
    for (std::size_t j = i + 1; j < witnesses.size(); ++j) {
      const auto& space = measures[static_cast<std::size_t>(witnesses[i].index)].space();
      if (set_separation(space, witnesses[i].cluster, witnesses[j].cluster) <= epsilon)
        return false;
    }
  return true;
}

namespace {

double mass_on_union(const DiscreteSignedMeasure& mu, const std::vector<NeighborhoodSet>& sets,
                     const std::vector<int>& which, int skip) {
  double s = 0;
  for (const auto& a : mu.atoms()) {
    for (int idx : which) {
      if (idx == skip) continue;
      const auto& e = sets[static_cast<std::size_t>(idx)];
      if (set_distance(mu.space(), a.point, e.base) <= e.radius) {
        s += a.weight;
        break;
      }
    }
  }
  return s;
}

}  // namespace

std::vector<int> select_sparse_subsequence(const std::vector<DiscreteSignedMeasure>& measures,
                                           const std::vector<NeighborhoodSet>& sets,
                                           double epsilon) {
  if (epsilon <= 0) throw ValidationError("select_sparse_subsequence: epsilon must be positive");
  if (measures.size() != sets.size())
    throw ValidationError("select_sparse_subsequence: measures and sets differ in length");
  if (!measures.empty()) {
    const auto& space = measures.front().space();
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = i + 1; j < sets.size(); ++j)
        if (set_separation(space, sets[i].base, sets[j].base) <=
            sets[i].radius + sets[j].radius)
          throw ValidationError("select_sparse_subsequence: neighborhood sets overlap");
  }

  // Stage-halving budgets mirror the pigeonhole proof: the k-th admitted index
  // may consume at most eps/2^(k+1) of each earlier selection's budget, so the
  // final mass on the union of the others stays below eps.
  std::vector<int> selected;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const int candidate = static_cast<int>(i);
    const double own = mass_on_union(measures[i], sets, selected, candidate);
    if (own >= epsilon / 2) continue;
    const double stage_budget =
        epsilon / std::pow(2.0, static_cast<double>(selected.size()) + 1.0);
    bool ok = true;
    for (int j : selected) {
      const auto& e = sets[i];
      double mass = 0;
      for (const auto& a : measures[static_cast<std::size_t>(j)].atoms())
        if (set_distance(measures[static_cast<std::size_t>(j)].space(), a.point, e.base) <=
            e.radius)
          mass += a.weight;
      if (mass >= stage_budget) {
        ok = false;
        break;
      }
    }
    if (ok) selected.push_back(candidate);
  }
  return selected;
}

bool verify_sparse_subsequence(const std::vector<DiscreteSignedMeasure>& measures,
                               const std::vector<NeighborhoodSet>& sets,
                               const std::vector<int>& selected, double epsilon) {
  for (int i : selected)
    if (mass_on_union(measures[static_cast<std::size_t>(i)], sets, selected, i) >= epsilon)
      return false;
  return true;
}

std::vector<LipFunction> decay_dictionary() {
  const auto space = MetricSpace::unit_interval();
  // Fixed probes with f(0) = f(1) (the pairings then decay like 1/n) and no
  // symmetry about 1/2 (which would zero them out for every n).
  std::vector<LipFunction> fs;
  fs.push_back(piecewise_linear_1d(space, {{0.0, 0.0}, {0.25, 1.0}, {0.5, 0.0}, {1.0, 0.0}}));
  fs.push_back(piecewise_linear_1d(space, {{0.0, 0.0}, {0.25, -0.5}, {0.75, 0.5}, {1.0, 0.0}}));
  fs.push_back(piecewise_linear_1d(space, {{0.0, 0.0}, {0.5, 1.0}, {0.75, 0.25}, {1.0, 0.0}}));
  return fs;
}

ExperimentReport counterexample_3_2(const std::vector<int>& n_values) {
  for (int n : n_values)
    if (n < 1) throw ValidationError("counterexample_3_2: n must be >= 1");
  ExperimentReport rep;
  rep.name = "counterexample_3_2";
  rep.params["n_values"] = n_values;

  const auto decay = decay_dictionary();
  std::vector<double> pairing, g_bl, lower_bound, tv;
  std::vector<std::vector<double>> decay_cols(decay.size());
  for (int n : n_values) {
    const auto mu = DensityMeasure1D::sinusoid(static_cast<double>(n), static_cast<double>(n));
    const auto g = sawtooth_g(n);
    const double p = mu.pair_with(g);
    const double gb = 1.0 + 1.0 / (4.0 * n);
    pairing.push_back(p);
    g_bl.push_back(gb);
    lower_bound.push_back(p / gb);
    tv.push_back(mu.total_variation());
    for (std::size_t k = 0; k < decay.size(); ++k)
      decay_cols[k].push_back(mu.pair_with(decay[k]));
  }
  rep.tables["n"] = n_values;
  rep.tables["pairing_g_n"] = pairing;
  rep.tables["g_n_bl_norm"] = g_bl;
  rep.tables["bl_dual_lower_bound"] = lower_bound;
  rep.tables["tv_norm"] = tv;
  for (std::size_t k = 0; k < decay.size(); ++k)
    rep.tables["pairing_decay_f" + std::to_string(k)] = decay_cols[k];
  rep.summary["target_pairing"] = 1.0 / (std::numbers::pi * std::numbers::pi);
  return rep;
}

ExperimentReport dirac_drift_demo(int n_max, const NormOptions& opts) {
  if (n_max < 1) throw ValidationError("dirac_drift_demo: n_max must be >= 1");
  ExperimentReport rep;
  rep.name = "dirac_drift_demo";
  rep.params["n_max"] = n_max;
  const auto space = MetricSpace::euclidean(1);
  const auto hat = hat_function(space, 1.0, {{0.0}});
  std::vector<int> ns;
  std::vector<double> lp, closed, pos_pair, neg_pair, pos_tv;
  for (int n = 1; n <= n_max; ++n) {
    const auto mu = DiscreteSignedMeasure::dirac(space, {static_cast<double>(n)}) -
                    DiscreteSignedMeasure::dirac(space, {n + 1.0 / n});
    const auto [pos, neg] = mu.jordan();
    ns.push_back(n);
    lp.push_back(bl_dual_norm(mu, opts).value);
    closed.push_back(2.0 / (2.0 * n + 1.0));
    pos_pair.push_back(pos.pair_with(hat));
    neg_pair.push_back(neg.pair_with(hat));
    pos_tv.push_back(pos.tv_norm());
  }
  rep.tables["n"] = ns;
  rep.tables["bl_dual_norm"] = lp;
  rep.tables["closed_form"] = closed;
  rep.tables["jordan_pos_pairing"] = pos_pair;
  rep.tables["jordan_neg_pairing"] = neg_pair;
  rep.tables["jordan_pos_tv"] = pos_tv;
  return rep;
}

ExperimentReport discrete_l1_demo(int m, int trials, std::uint64_t seed,
                                  const NormOptions& opts) {
  if (m < 1) throw ValidationError("discrete_l1_demo: m must be >= 1");
  if (static_cast<std::size_t>(m) > opts.support_cap)
    throw CapExceededError("discrete_l1_demo: m exceeds the LP support cap");
  ExperimentReport rep;
  rep.name = "discrete_l1_demo";
  rep.params["m"] = m;
  rep.params["trials"] = trials;
  rep.seed = seed;

  const auto space = MetricSpace::discrete_naturals();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(-2.0, 2.0);
  std::uniform_int_distribution<int> count(1, m);
  std::vector<double> ratios;
  for (int t = 0; t < trials; ++t) {
    std::vector<int> points(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) points[static_cast<std::size_t>(i)] = i;
    std::shuffle(points.begin(), points.end(), rng);
    const int k = count(rng);
    std::vector<Atom> atoms;
    for (int i = 0; i < k; ++i) {
      double w = weight(rng);
      if (w == 0) w = 1.0;
      atoms.push_back({Point{static_cast<double>(points[static_cast<std::size_t>(i)])}, w});
    }
    const DiscreteSignedMeasure mu(space, std::move(atoms));
    ratios.push_back(bl_dual_norm(mu, opts).value / mu.tv_norm());
  }
  const auto extremal = DiscreteSignedMeasure::dirac(space, {0.0}) -
                        DiscreteSignedMeasure::dirac(space, {1.0});
  rep.tables["ratio"] = ratios;
  rep.summary["min_ratio"] = *std::min_element(ratios.begin(), ratios.end());
  rep.summary["max_ratio"] = *std::max_element(ratios.begin(), ratios.end());
  rep.summary["extremal_delta0_minus_delta1_ratio"] =
      bl_dual_norm(extremal, opts).value / extremal.tv_norm();
  return rep;
}

}  // namespace flatnorm

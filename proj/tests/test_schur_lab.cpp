#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "flatnorm/errors.hpp"
#include "flatnorm/schur_lab.hpp"

using namespace flatnorm;

namespace {
const MetricSpace kLine = MetricSpace::euclidean(1);

MeasureSequence constant_dirac() {
  MeasureSequence seq;
  seq.generate = [](int) { return DiscreteSignedMeasure::dirac(kLine, {0}); };
  seq.tv_bound = 1.0;
  seq.n_max = 16;
  return seq;
}

MeasureSequence dirac_drift() {
  MeasureSequence seq;
  seq.generate = [](int n) {
    return DiscreteSignedMeasure::dirac(kLine, {double(n)}) -
           DiscreteSignedMeasure::dirac(kLine, {n + 1.0 / n});
  };
  seq.tv_bound = 2.0;
  seq.n_max = 16;
  return seq;
}
}  // namespace

TEST_CASE("dictionary_convergence_scan: constant sequence is flat") {
  auto dict = dictionary(kLine, {{0}}, {1.0}, 1);
  auto report = dictionary_convergence_scan(constant_dirac(), dict, 16);
  for (const auto& v : report.summary["tail_oscillation"])
    CHECK(v.get<double>() == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(report.summary["flat_tail"].get<double>() ==
        doctest::Approx(0.0).scale(1).epsilon(1e-12));
}

TEST_CASE("dictionary_convergence_scan: drift sequence decays at the closed-form rate") {
  auto dict = dictionary(kLine, {{0}, {1}}, {1.0}, 1);
  auto report = dictionary_convergence_scan(dirac_drift(), dict, 16);
  // Flat tail over n in [8,16]: the triangle bound peaks at the adjacent pair
  // (8,9), giving 2/17 + 2/19 by the two-point closed form.
  const double tail = report.summary["flat_tail"].get<double>();
  CHECK(tail <= 2.0 / 17 + 2.0 / 19 + 1e-9);
  CHECK(tail > 0);
  for (const auto& v : report.summary["tail_oscillation"])
    CHECK(v.get<double>() <= 4.0 * tail + 1e-9);  // |<mu_n - mu_m, f>| <= ||f||_BL * bl

  MeasureSequence alternating;
  alternating.generate = [](int n) {
    return DiscreteSignedMeasure::dirac(kLine, {n % 2 ? 1.0 : -1.0});
  };
  alternating.tv_bound = 1.0;
  alternating.n_max = 16;
  auto bad = dictionary_convergence_scan(alternating, dict, 16);
  CHECK(bad.summary["flat_tail"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(dictionary_convergence_scan(constant_dirac(), {}, 16), ValidationError);
}

TEST_CASE("escaping_mass_profile") {
  auto tight = constant_dirac();
  auto r1 = escaping_mass_profile(tight, {0}, {0.5, 1.0, 2.0}, 16);
  auto col = r1.tables["escaping_mass"];
  CHECK(col[1].get<double>() == 0.0);
  CHECK(col[2].get<double>() == 0.0);

  MeasureSequence escaping;
  escaping.generate = [](int n) {
    return DiscreteSignedMeasure::dirac(kLine, {double(n)});
  };
  escaping.n_max = 16;
  auto r2 = escaping_mass_profile(escaping, {0}, {1, 5, 10}, 16);
  for (const auto& v : r2.tables["escaping_mass"]) CHECK(v.get<double>() == 1.0);

  MeasureSequence mixed;
  mixed.generate = [](int n) {
    return DiscreteSignedMeasure::dirac(kLine, {0}, 1.0 - 1.0 / n) +
           DiscreteSignedMeasure::dirac(kLine, {double(n)}, 1.0 / n);
  };
  mixed.n_max = 16;
  auto r3 = escaping_mass_profile(mixed, {0}, {1.5, 4.5, 12.5}, 16);
  auto c3 = r3.tables["escaping_mass"];
  CHECK(c3[0].get<double>() == doctest::Approx(0.5));        // sup over n>1 of 1/n
  CHECK(c3[1].get<double>() == doctest::Approx(1.0 / 5));    // first escaping n = 5
  CHECK(c3[2].get<double>() == doctest::Approx(1.0 / 13));
  double prev = 1e9;
  for (const auto& v : c3) {
    CHECK(v.get<double>() <= prev + 1e-12);
    prev = v.get<double>();
  }
}

TEST_CASE("find_separated_clusters: constructed instances") {
  std::vector<DiscreteSignedMeasure> seq;
  for (int n = 1; n <= 5; ++n)
    seq.push_back(DiscreteSignedMeasure::dirac(kLine, {3.0 * n}));
  auto found = find_separated_clusters(seq, 1.0);
  REQUIRE(found.has_value());
  REQUIRE(found->size() == 5);
  for (const auto& wit : *found) CHECK(wit.mass == doctest::Approx(1.0));
  for (std::size_t i = 0; i < found->size(); ++i)
    for (std::size_t j = i + 1; j < found->size(); ++j)
      CHECK(set_separation(kLine, (*found)[i].cluster, (*found)[j].cluster) >=
            3.0 - 1e-12);
  CHECK(verify_cluster_witnesses(seq, *found, 1.0));

  std::vector<DiscreteSignedMeasure> same(4, DiscreteSignedMeasure::dirac(kLine, {0}));
  CHECK(!find_separated_clusters(same, 0.5).has_value());

  std::vector<DiscreteSignedMeasure> split;
  for (int n = 1; n <= 4; ++n)
    split.push_back(DiscreteSignedMeasure::dirac(kLine, {0}, 0.5) +
                    DiscreteSignedMeasure::dirac(kLine, {5.0 * n}, 0.5));
  auto found2 = find_separated_clusters(split, 0.4);
  REQUIRE(found2.has_value());
  CHECK(found2->size() >= 2);
  for (const auto& wit : *found2) CHECK(wit.mass == doctest::Approx(0.5));
  CHECK(verify_cluster_witnesses(split, *found2, 0.4));

  auto signedm = DiscreteSignedMeasure(kLine, {{{0}, -1.0}});
  CHECK_THROWS_AS(find_separated_clusters({signedm}, 1.0), ValidationError);
  CHECK_THROWS_AS(find_separated_clusters(seq, 0.0), ValidationError);
}

TEST_CASE("select_sparse_subsequence") {
  std::vector<DiscreteSignedMeasure> measures;
  std::vector<NeighborhoodSet> sets;
  for (int i = 0; i < 4; ++i) {
    measures.push_back(DiscreteSignedMeasure::dirac(kLine, {10.0 * i}));
    sets.push_back({{{10.0 * i}}, 1.0});
  }
  auto all = select_sparse_subsequence(measures, sets, 0.5);
  CHECK(all.size() == 4);
  CHECK(verify_sparse_subsequence(measures, sets, all, 0.5));

  auto one = select_sparse_subsequence({measures[0]}, {sets[0]}, 0.5);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == 0);

  // Overlapping sets are rejected.
  std::vector<NeighborhoodSet> overlap = sets;
  overlap[1].base = {{0.5}};
  CHECK_THROWS_AS(select_sparse_subsequence(measures, overlap, 0.5), ValidationError);
  CHECK_THROWS_AS(select_sparse_subsequence(measures, {sets[0]}, 0.5), ValidationError);
}

TEST_CASE("property: witnesses always pass their post-hoc checks") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> x(0, 100), w(0.1, 1.5), eps(0.2, 0.8);
  std::uniform_int_distribution<int> natoms(1, 4), nmeas(2, 6);
  for (int t = 0; t < 100; ++t) {
    std::vector<DiscreteSignedMeasure> measures;
    for (int i = 0, k = nmeas(rng); i < k; ++i) {
      std::vector<Atom> atoms;
      for (int a = 0, m = natoms(rng); a < m; ++a) atoms.push_back({{x(rng)}, w(rng)});
      measures.push_back(DiscreteSignedMeasure(kLine, std::move(atoms)));
    }
    const double e = eps(rng);
    auto found = find_separated_clusters(measures, e);
    if (found) CHECK(verify_cluster_witnesses(measures, *found, e));

    std::vector<NeighborhoodSet> sets;
    std::vector<DiscreteSignedMeasure> located;
    for (std::size_t i = 0; i < measures.size(); ++i) {
      sets.push_back({{{1000.0 + 10.0 * i}}, 2.0});
      located.push_back(measures[i]);
    }
    auto picked = select_sparse_subsequence(located, sets, e);
    CHECK(verify_sparse_subsequence(located, sets, picked, e));
  }
}

TEST_CASE("counterexample_3_2 report") {
  auto report = counterexample_3_2({1, 2, 8});
  const double inv_pi2 = 1.0 / (std::numbers::pi * std::numbers::pi);
  auto pairing = report.tables["pairing_g_n"];
  for (const auto& v : pairing) CHECK(v.get<double>() == doctest::Approx(inv_pi2).epsilon(1e-9));

  auto blb = report.tables["bl_dual_lower_bound"];
  auto gbl = report.tables["g_n_bl_norm"];
  const int ns[] = {1, 2, 8};
  for (int i = 0; i < 3; ++i) {
    CHECK(gbl[i].get<double>() == doctest::Approx(1.0 + 1.0 / (4 * ns[i])).epsilon(1e-12));
    CHECK(blb[i].get<double>() ==
          doctest::Approx(inv_pi2 / (1.0 + 1.0 / (4 * ns[i]))).epsilon(1e-9));
    CHECK(blb[i].get<double>() >= inv_pi2 / 1.25 - 1e-12);
    CHECK(report.tables["tv_norm"][i].get<double>() ==
          doctest::Approx(2.0 * ns[i] / std::numbers::pi).epsilon(1e-9));
  }
  CHECK(decay_dictionary().size() == 3);
  CHECK_THROWS_AS(counterexample_3_2({0}), ValidationError);
}

TEST_CASE("dirac_drift_demo report") {
  auto report = dirac_drift_demo(6);
  for (int i = 0; i < 6; ++i) {
    const int n = i + 1;
    CHECK(report.tables["bl_dual_norm"][i].get<double>() ==
          doctest::Approx(2.0 / (2 * n + 1)).epsilon(1e-9));
    CHECK(report.tables["closed_form"][i].get<double>() ==
          doctest::Approx(2.0 / (2 * n + 1)).epsilon(1e-12));
    CHECK(report.tables["jordan_pos_tv"][i].get<double>() == doctest::Approx(1.0));
    if (n >= 2)
      CHECK(report.tables["jordan_pos_pairing"][i].get<double>() == 0.0);
  }
}

TEST_CASE("discrete_l1_demo report") {
  auto report = discrete_l1_demo(8, 50, 9);
  CHECK(report.summary["min_ratio"].get<double>() >= 1.0 / 3 - 1e-9);
  CHECK(report.summary["max_ratio"].get<double>() <= 1.0 + 1e-9);
  CHECK(report.summary["extremal_delta0_minus_delta1_ratio"].get<double>() ==
        doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("reports are deterministic") {
  auto a = discrete_l1_demo(6, 20, 123).to_json().dump();
  auto b = discrete_l1_demo(6, 20, 123).to_json().dump();
  CHECK(a == b);
  auto c = counterexample_3_2({1, 4}).to_json().dump();
  auto d = counterexample_3_2({1, 4}).to_json().dump();
  CHECK(c == d);
  CHECK(!counterexample_3_2({1, 4}).to_csv().empty());
}

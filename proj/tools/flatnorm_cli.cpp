#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatnorm/errors.hpp"
#include "flatnorm/json_io.hpp"
#include "flatnorm/schur_lab.hpp"

namespace {

using namespace flatnorm;

void round_numbers(nlohmann::ordered_json& j) {
  if (j.is_number_float())
    j = round_significant(j.get<double>(), 12);
  else if (j.is_object() || j.is_array())
    for (auto& v : j) round_numbers(v);
}

void print_scalar(double v) {
  std::printf("%.12g\n", v);
}

void emit_report(const ExperimentReport& rep, const std::string& format) {
  if (format == "csv") {
    std::cout << rep.to_csv();
    return;
  }
  auto j = rep.to_json();
  round_numbers(j);
  std::cout << j.dump(2) << "\n";
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    out.push_back(std::stod(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

std::size_t support_cap(std::size_t flag_value) {
  if (const char* env = std::getenv("FLATNORM_CAP")) return std::stoul(env);
  return flag_value;
}

int run(int argc, char** argv) {
  CLI::App app{"flat (dual bounded-Lipschitz) and Fortet-Mourier norms of "
               "finitely supported signed measures"};
  app.require_subcommand(1);

  std::string ball = "bl", format = "json";
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::size_t cap = 300;
  app.add_option("--ball", ball, "dual ball: bl or fm")->check(CLI::IsMember({"bl", "fm"}));
  app.add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "random seed (default 0)");
  app.add_option("--cap", cap, "LP support cap (env FLATNORM_CAP overrides)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));

  std::string measure_path, measure_path2, function_path, operator_path, space_path;
  std::string n_list = "1,2,4,8";
  std::string radii_list = "0.125,0.25,0.5,1";
  std::string center_list = "0";
  int n_max = 16, m_size = 16, trials = 50, samples = 64;
  double epsilon = 1.0;

  auto* tv_cmd = app.add_subcommand("tv", "total variation norm of a measure");
  tv_cmd->add_option("measure", measure_path)->required();

  auto* norm_cmd = app.add_subcommand("norm", "dual norm of a measure with witness");
  norm_cmd->add_option("measure", measure_path)->required();

  auto* dist_cmd = app.add_subcommand("dist", "dual-norm distance between two measures");
  dist_cmd->add_option("a", measure_path)->required();
  dist_cmd->add_option("b", measure_path2)->required();

  auto* pair_cmd = app.add_subcommand("pair", "pairing <mu, f>");
  pair_cmd->add_option("measure", measure_path)->required();
  pair_cmd->add_option("function", function_path)->required();

  auto* push_cmd = app.add_subcommand("pushforward", "apply a Markov operator to a measure");
  push_cmd->add_option("measure", measure_path)->required();
  push_cmd->add_option("operator", operator_path)->required();

  auto* eprop_cmd = app.add_subcommand("eproperty", "equicontinuity modulus table");
  eprop_cmd->add_option("operators", operator_path, "operator JSON (object or array)")->required();
  eprop_cmd->add_option("function", function_path)->required();
  eprop_cmd->add_option("space", space_path)->required();
  eprop_cmd->add_option("--center", center_list, "center point, comma separated");
  eprop_cmd->add_option("--radii", radii_list, "increasing radii, comma separated");
  eprop_cmd->add_option("--samples", samples, "samples per radius");

  auto* validate_cmd = app.add_subcommand("validate-metric", "metric axioms of a matrix space");
  validate_cmd->add_option("space", space_path)->required();

  auto* demo = app.add_subcommand("demo", "reproducible demonstrations");
  demo->require_subcommand(1);
  auto* ce_cmd = demo->add_subcommand("counterexample-3-2", "oscillating densities");
  ce_cmd->add_option("--n", n_list, "comma separated frequencies");
  auto* drift_cmd = demo->add_subcommand("dirac-drift", "delta_n - delta_{n+1/n}");
  drift_cmd->add_option("--n-max", n_max);
  auto* l1_cmd = demo->add_subcommand("discrete-l1", "norm equivalence on the naturals");
  l1_cmd->add_option("--m", m_size);
  l1_cmd->add_option("--trials", trials);
  auto* clusters_cmd = demo->add_subcommand("clusters", "separated mass clusters");
  clusters_cmd->add_option("measures", measure_path, "JSON array of measures (default: delta_{3n})");
  clusters_cmd->add_option("--epsilon", epsilon);
  auto* scan_cmd = demo->add_subcommand("scan", "dictionary convergence scan of the drift sequence");
  scan_cmd->add_option("--n-max", n_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  NormOptions opts;
  opts.support_cap = support_cap(cap);
  opts.tol = tol;
  const Ball the_ball = ball == "fm" ? Ball::FM : Ball::BL;

  auto check_cap = [](const NormResult& r) {
    if (r.status == SolveStatus::SizeExceeded)
      throw CapExceededError("support size exceeds the LP cap");
    return r;
  };

  if (tv_cmd->parsed()) {
    print_scalar(parse_measure(load_json_file(measure_path)).tv_norm());
  } else if (norm_cmd->parsed()) {
    const auto mu = parse_measure(load_json_file(measure_path));
    const auto res = check_cap(dual_norm(mu, the_ball, opts));
    std::cout << serialize_norm_result(res).dump(2) << "\n";
  } else if (dist_cmd->parsed()) {
    const auto a = parse_measure(load_json_file(measure_path));
    const auto b = parse_measure(load_json_file(measure_path2));
    print_scalar(check_cap(dual_norm(a - b, the_ball, opts)).value);
  } else if (pair_cmd->parsed()) {
    const auto mu = parse_measure(load_json_file(measure_path));
    const auto f = parse_function(load_json_file(function_path), mu.space());
    print_scalar(mu.pair_with(f));
  } else if (push_cmd->parsed()) {
    const auto mu = parse_measure(load_json_file(measure_path));
    const auto op = parse_operator(load_json_file(operator_path), mu.space());
    std::cout << serialize_measure(op.apply(mu)).dump(2) << "\n";
  } else if (eprop_cmd->parsed()) {
    const auto space = parse_space(load_json_file(space_path));
    const auto ops_json = load_json_file(operator_path);
    std::vector<MarkovOperator> family;
    if (ops_json.is_array())
      for (const auto& o : ops_json) family.push_back(parse_operator(o, space));
    else
      family.push_back(parse_operator(ops_json, space));
    const auto f = parse_function(load_json_file(function_path), space);
    const auto table = eproperty_probe(family, f, parse_double_list(center_list),
                                       parse_double_list(radii_list), samples, seed);
    ExperimentReport rep;
    rep.name = "eproperty_probe";
    rep.seed = seed;
    rep.params["family_size"] = family.size();
    rep.tables["radius"] = table.radii;
    rep.tables["omega"] = table.omega;
    rep.tables["samples"] = table.samples;
    emit_report(rep, format);
  } else if (validate_cmd->parsed()) {
    const auto space = parse_space(load_json_file(space_path));
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& v : space.validate()) out.push_back(v.describe());
    std::cout << out.dump(2) << "\n";
  } else if (ce_cmd->parsed()) {
    std::vector<int> ns;
    for (double v : parse_double_list(n_list)) ns.push_back(static_cast<int>(v));
    emit_report(counterexample_3_2(ns), format);
  } else if (drift_cmd->parsed()) {
    emit_report(dirac_drift_demo(n_max, opts), format);
  } else if (l1_cmd->parsed()) {
    emit_report(discrete_l1_demo(m_size, trials, seed, opts), format);
  } else if (clusters_cmd->parsed()) {
    std::vector<DiscreteSignedMeasure> measures;
    if (!measure_path.empty()) {
      for (const auto& m : load_json_file(measure_path)) measures.push_back(parse_measure(m));
    } else {
      const auto space = MetricSpace::euclidean(1);
      for (int n = 1; n <= 5; ++n)
        measures.push_back(DiscreteSignedMeasure::dirac(space, {3.0 * n}));
    }
    const auto witnesses = find_separated_clusters(measures, epsilon);
    ExperimentReport rep;
    rep.name = "separated_clusters";
    rep.params["epsilon"] = epsilon;
    std::vector<int> idx;
    std::vector<double> mass;
    nlohmann::ordered_json clusters = nlohmann::ordered_json::array();
    if (witnesses) {
      for (const auto& w : *witnesses) {
        idx.push_back(w.index);
        mass.push_back(w.mass);
        clusters.push_back(w.cluster);
      }
      rep.summary["verified"] = verify_cluster_witnesses(measures, *witnesses, epsilon);
    } else {
      rep.summary["verified"] = false;
    }
    rep.tables["index"] = idx;
    rep.tables["mass"] = mass;
    rep.tables["cluster"] = clusters;
    rep.summary["found"] = witnesses.has_value();
    emit_report(rep, format);
  } else if (scan_cmd->parsed()) {
    const auto space = MetricSpace::euclidean(1);
    MeasureSequence seq;
    seq.generate = [space](int n) {
      return DiscreteSignedMeasure::dirac(space, {static_cast<double>(n)}) -
             DiscreteSignedMeasure::dirac(space, {n + 1.0 / n});
    };
    seq.tv_bound = 2.0;
    seq.n_max = n_max;
    std::vector<LipFunction> dict = {hat_function(space, 1.0, {{0.0}}),
                                     hat_function(space, 1.0, {{1.0}}),
                                     constant_function(space, 1.0)};
    emit_report(dictionary_convergence_scan(seq, dict, n_max, opts), format);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const flatnorm::CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const flatnorm::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#include "flatnorm/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "flatnorm/errors.hpp"

namespace flatnorm {

namespace {

double parse_weight(const nlohmann::json& j) {
  if (j.is_string()) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(j.get<std::string>(), &pos);
      if (pos != j.get<std::string>().size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ValidationError("measure: weight string is not a decimal number: " + j.dump());
    }
  }
  if (j.is_number()) return j.get<double>();
  throw ValidationError("measure: weight must be a number or decimal string");
}

Point parse_point(const nlohmann::json& j) {
  if (j.is_number()) return Point{j.get<double>()};
  if (j.is_array()) {
    Point p;
    for (const auto& v : j) {
      if (!v.is_number()) throw ValidationError("point: coordinates must be numbers");
      p.push_back(v.get<double>());
    }
    return p;
  }
  throw ValidationError("point: expected a number or an array of numbers");
}

std::string require_string(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string())
    throw ValidationError(std::string("missing or non-string field: ") + field);
  return j[field].get<std::string>();
}

}  // namespace

MetricSpace parse_space(const nlohmann::json& j) {
  const std::string kind = require_string(j, "kind");
  if (kind == "euclidean") {
    if (!j.contains("dim") || !j["dim"].is_number_unsigned())
      throw ValidationError("space: euclidean requires a positive integer field dim");
    return MetricSpace::euclidean(j["dim"].get<std::size_t>());
  }
  if (kind == "unit_interval") return MetricSpace::unit_interval();
  if (kind == "discrete_naturals") return MetricSpace::discrete_naturals();
  if (kind == "matrix") {
    if (!j.contains("points") || !j.contains("distances"))
      throw ValidationError("space: matrix requires fields points and distances");
    std::vector<std::string> labels;
    for (const auto& p : j["points"]) labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
    std::vector<std::vector<double>> dist;
    for (const auto& row : j["distances"]) {
      std::vector<double> r;
      for (const auto& v : row) r.push_back(v.get<double>());
      dist.push_back(std::move(r));
    }
    return MetricSpace::matrix(std::move(labels), std::move(dist));
  }
  throw ValidationError("space: unknown kind: " + kind);
}

nlohmann::ordered_json serialize_space(const MetricSpace& space) {
  nlohmann::ordered_json j;
  switch (space.kind()) {
    case MetricSpace::Kind::Euclidean:
      j["kind"] = "euclidean";
      j["dim"] = space.point_dim();
      break;
    case MetricSpace::Kind::UnitInterval:
      j["kind"] = "unit_interval";
      break;
    case MetricSpace::Kind::DiscreteNaturals:
      j["kind"] = "discrete_naturals";
      break;
    case MetricSpace::Kind::Matrix: {
      j["kind"] = "matrix";
      j["points"] = space.labels();
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      const std::size_t n = space.matrix_size();
      for (std::size_t i = 0; i < n; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < n; ++k)
          row.push_back(space.distance(Point{double(i)}, Point{double(k)}));
        rows.push_back(std::move(row));
      }
      j["distances"] = std::move(rows);
      break;
    }
    default:
      throw ValidationError("serialize_space: combinator spaces have no JSON form");
  }
  return j;
}

DiscreteSignedMeasure parse_measure(const nlohmann::json& j) {
  if (!j.contains("space")) throw ValidationError("measure: missing field space");
  if (!j.contains("atoms") || !j["atoms"].is_array())
    throw ValidationError("measure: missing or non-array field atoms");
  MetricSpace space = parse_space(j["space"]);
  std::vector<Atom> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.contains("point") || !a.contains("weight"))
      throw ValidationError("measure: each atom needs fields point and weight");
    atoms.push_back({parse_point(a["point"]), parse_weight(a["weight"])});
  }
  return DiscreteSignedMeasure(std::move(space), std::move(atoms));
}

nlohmann::ordered_json serialize_measure(const DiscreteSignedMeasure& mu) {
  nlohmann::ordered_json j;
  j["space"] = serialize_space(mu.space());
  nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
  for (const auto& a : mu.atoms()) {
    nlohmann::ordered_json atom;
    atom["point"] = a.point;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", a.weight);
    atom["weight"] = std::string(buf);
    atoms.push_back(std::move(atom));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

LipFunction parse_function(const nlohmann::json& j, const MetricSpace& space) {
  const std::string kind = require_string(j, "kind");
  if (kind == "constant") {
    if (!j.contains("value")) throw ValidationError("function: constant requires field value");
    return constant_function(space, j["value"].get<double>());
  }
  if (kind == "hat") {
    if (!j.contains("lambda") || !j.contains("centers"))
      throw ValidationError("function: hat requires fields lambda and centers");
    PointSet centers;
    for (const auto& c : j["centers"]) centers.push_back(parse_point(c));
    return hat_function(space, j["lambda"].get<double>(), centers);
  }
  if (kind == "tent") {
    if (!j.contains("lambda") || !j.contains("centers") || !j.contains("amplitudes"))
      throw ValidationError("function: tent requires fields lambda, centers, amplitudes");
    PointSet centers;
    for (const auto& c : j["centers"]) centers.push_back(parse_point(c));
    std::vector<double> amps;
    for (const auto& a : j["amplitudes"]) amps.push_back(a.get<double>());
    return tent_family_function(space, centers, amps, j["lambda"].get<double>());
  }
  if (kind == "piecewise_linear_1d") {
    if (!j.contains("breakpoints"))
      throw ValidationError("function: piecewise_linear_1d requires field breakpoints");
    std::vector<std::array<double, 2>> bp;
    for (const auto& p : j["breakpoints"]) {
      if (!p.is_array() || p.size() != 2)
        throw ValidationError("function: each breakpoint must be a pair [x, y]");
      bp.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return piecewise_linear_1d(space, std::move(bp));
  }
  throw ValidationError("function: unknown kind: " + kind);
}

namespace {

LipMap parse_map(const nlohmann::json& j) {
  if (j.contains("affine")) {
    const double a = j["affine"].value("a", 1.0);
    const double b = j["affine"].value("b", 0.0);
    return LipMap{[a, b](const Point& x) {
                    Point y = x;
                    for (auto& v : y) v = a * v + b;
                    return y;
                  },
                  std::abs(a)};
  }
  throw ValidationError("operator: map must be affine: {\"affine\":{\"a\":...,\"b\":...}}");
}

}  // namespace

MarkovOperator parse_operator(const nlohmann::json& j, const MetricSpace& space) {
  const std::string kind = require_string(j, "kind");
  const std::string label = j.value("label", std::string{});
  if (kind == "pushforward") {
    if (!j.contains("map")) throw ValidationError("operator: pushforward requires field map");
    return MarkovOperator::pushforward_op(space, parse_map(j["map"]), label);
  }
  if (kind == "ifs") {
    if (!j.contains("maps") || !j["maps"].is_array())
      throw ValidationError("operator: ifs requires an array field maps");
    std::vector<std::pair<LipMap, double>> branches;
    for (const auto& b : j["maps"]) {
      if (!b.contains("p")) throw ValidationError("operator: each ifs branch needs field p");
      branches.emplace_back(parse_map(b), b["p"].get<double>());
    }
    return MarkovOperator::ifs(space, std::move(branches), label);
  }
  if (kind == "kernel") {
    if (!j.contains("matrix")) throw ValidationError("operator: kernel requires field matrix");
    std::vector<std::vector<double>> rows;
    for (const auto& row : j["matrix"]) {
      std::vector<double> r;
      for (const auto& v : row) r.push_back(v.get<double>());
      rows.push_back(std::move(r));
    }
    return MarkovOperator::kernel(space, std::move(rows), label);
  }
  throw ValidationError("operator: unknown kind: " + kind);
}

nlohmann::ordered_json serialize_norm_result(const NormResult& result) {
  nlohmann::ordered_json j;
  j["ball"] = result.ball == Ball::BL ? "bl" : "fm";
  switch (result.status) {
    case SolveStatus::Optimal:
      j["value"] = round_significant(result.value, 12);
      j["status"] = "optimal";
      break;
    case SolveStatus::InfeasibleData:
      j["status"] = "infeasible_data";
      break;
    case SolveStatus::SizeExceeded:
      j["status"] = "size_exceeded";
      break;
  }
  nlohmann::ordered_json witness = nlohmann::ordered_json::array();
  for (const auto& [point, f] : result.witness) {
    nlohmann::ordered_json w;
    w["point"] = point;
    w["f"] = round_significant(f, 12);
    witness.push_back(std::move(w));
  }
  j["witness"] = std::move(witness);
  return j;
}

double round_significant(double value, int digits) {
  if (value == 0 || !std::isfinite(value)) return value;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace flatnorm

#include "monoext/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "monoext/error.hpp"

namespace monoext::io {

namespace {

std::string label_of(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw ParseError("labels must be strings or integers, got " + j.dump());
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number_of(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number, got " + j.dump());
  return j.get<double>();
}

std::size_t count_of(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ParseError(std::string(what) + " must be a non-negative integer, got " + j.dump());
  }
  return j.get<std::size_t>();
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

Poset poset_from_json(const Json& j) {
  if (j.is_object() && j.contains("grid")) {
    const auto& g = j.at("grid");
    const std::size_t n = count_of(require(g, "n"), "grid.n");
    const std::string order = g.value("order", std::string("product"));
    if (order == "product") return grid_poset(n, GridOrder::product);
    if (order == "rows") return grid_poset(n, GridOrder::rows);
    throw ParseError("grid order must be 'product' or 'rows', got '" + order + "'");
  }
  const auto& labels_json = require(j, "labels");
  if (!labels_json.is_array()) throw ParseError("'labels' must be an array");
  std::vector<std::string> labels;
  for (const auto& l : labels_json) labels.push_back(label_of(l));

  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2) throw ParseError("each cover must be a pair, got " + c.dump());
      covers.emplace_back(label_of(c[0]), label_of(c[1]));
    }
  }
  return Poset::build(std::move(labels), covers);
}

QuerySet query_from_json(const Poset& poset, const Json& j) {
  const auto& q = require(j, "query");
  if (!q.is_array()) throw ParseError("'query' must be an array");
  std::vector<std::string> labels;
  for (const auto& l : q) labels.push_back(label_of(l));
  return QuerySet::from_labels(poset, labels);
}

ValueScale scale_from_json(const Json& j) {
  if (j.is_object() && j.contains("from_m")) {
    const auto& f = j.at("from_m");
    return scale_from_m(map_from_json(require(f, "m")), count_of(require(f, "n"), "from_m.n"));
  }
  const auto& v = require(j, "values");
  if (!v.is_array()) throw ParseError("'values' must be an array");
  std::vector<Rational> values;
  for (const auto& x : v) {
    if (x.is_string()) {
      values.push_back(parse_rational(x.get<std::string>()));
    } else if (x.is_number_integer()) {
      values.push_back(parse_rational(x.dump()));
    } else if (x.is_number()) {
      values.push_back(rational_from_double(x.get<double>()));
    } else {
      throw ParseError("scale values must be numbers or 'p/q' strings, got " + x.dump());
    }
  }
  return ValueScale(std::move(values));
}

MonotoneMap1D map_from_json(const Json& j) {
  if (j.is_string()) return map_from_argument(j.get<std::string>());
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "identity" || kind == "id") return MonotoneMap1D::identity();
  if (kind == "power") return MonotoneMap1D::power(number_of(require(j, "p"), "p"));
  if (kind == "constant") return MonotoneMap1D::constant(number_of(require(j, "alpha"), "alpha"));
  if (kind == "pwl") {
    std::vector<std::pair<double, double>> points;
    for (const auto& p : require(j, "points")) {
      if (!p.is_array() || p.size() != 2) throw ParseError("pwl points must be [x, y] pairs");
      points.emplace_back(number_of(p[0], "x"), number_of(p[1], "y"));
    }
    return MonotoneMap1D::piecewise_linear(std::move(points));
  }
  throw ParseError("unknown map kind '" + kind + "'");
}

MonotoneMap1D map_from_argument(const std::string& arg) {
  if (arg == "id" || arg == "identity" || arg == "lin") return MonotoneMap1D::identity();
  auto shorthand = [&](const std::string& prefix) -> std::optional<double> {
    if (arg.rfind(prefix, 0) != 0) return std::nullopt;
    auto v = parse_double(arg.substr(prefix.size()));
    if (!v) throw ParseError("bad number in '" + arg + "'");
    return v;
  };
  if (auto p = shorthand("pow:")) return MonotoneMap1D::power(*p);
  if (auto a = shorthand("const:")) return MonotoneMap1D::constant(*a);
  if (!arg.empty() && arg.front() == '{') {
    try {
      return map_from_json(Json::parse(arg));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("inline map: " + std::string(e.what()));
    }
  }
  return map_from_json(load_json(arg));
}

EmpiricalRV samples_from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (auto comma = line.find(','); comma != std::string::npos) line = trim(line.substr(0, comma));
    auto v = parse_double(line);
    if (!v) {
      if (samples.empty() && line_no == 1) continue;
      throw ParseError("'" + path.string() + "' line " + std::to_string(line_no) + ": not a number");
    }
    samples.push_back(*v);
  }
  return EmpiricalRV(std::move(samples));
}

Json rational_json(const Rational& q) { return to_fraction_string(q); }

Json to_json(const Poset& poset, const QuerySet& query, const ValueScale& scale, const BoundResult& r) {
  Json out;
  out["objective"] = rational_json(r.objective);
  Json perm = Json::array();
  Json order = Json::array();
  for (std::size_t p : r.witness_perm) {
    perm.push_back(p + 1);
    order.push_back(poset.label(query[p]));
  }
  out["witness_perm"] = perm;
  out["witness_order"] = order;
  Json fn = Json::object();
  for (Element e = 0; e < poset.size(); ++e) fn[poset.label(e)] = rational_json(r.witness_fn.value(e, scale));
  out["witness_fn"] = fn;
  Json values = Json::array();
  for (const auto& v : r.per_node_values) values.push_back(rational_json(v));
  out["per_node_values"] = values;
  return out;
}

Json to_json(const SurfaceMembershipReport& r) {
  Json out;
  out["passed"] = r.passed;
  out["grid_n"] = r.grid_n;
  out["monotone"] = r.monotone;
  if (const auto& v = r.monotonicity_violation) {
    out["violation"] = {{"from", {v->first.x, v->first.y, v->first.value}},
                        {"to", {v->second.x, v->second.y, v->second.value}}};
  }
  out["max_distribution_deviation"] = r.max_distribution_deviation;
  out["worst_u"] = r.worst_u;
  out["tolerance"] = r.tolerance;
  return out;
}

Json to_json(const ProcessMembershipReport& r) {
  Json out;
  out["passed"] = r.passed;
  out["grid_t"] = r.grid_t;
  out["grid_y"] = r.grid_y;
  out["monotone"] = r.monotone;
  if (const auto& v = r.monotonicity_violation) {
    out["violation"] = {{"y", v->y}, {"t1", v->t1}, {"t2", v->t2}, {"v1", v->v1}, {"v2", v->v2}};
  }
  out["max_deviation"] = r.max_deviation;
  out["worst_s"] = r.worst_s;
  out["tolerance"] = r.tolerance;
  return out;
}

Json to_json(const GridExperimentRecord& r) {
  Json out;
  out["alpha"] = r.alpha;
  out["n"] = r.n;
  out["k"] = r.k;
  out["column"] = r.column;
  out["column_sum"] = rational_json(r.column_sum);
  out["discrete_bound"] = rational_json(r.discrete_bound);
  out["discrete_value"] = r.discrete_value;
  out["target"] = r.target;
  out["error"] = r.error;
  out["error_constant"] = r.error_constant;
  out["phi_is_monotone_bijection"] = r.phi_is_monotone_bijection;
  return out;
}

}  // namespace monoext::io

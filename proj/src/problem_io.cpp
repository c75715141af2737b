// SPDX-License-Identifier: Apache-2.0
#include "slspec/problem_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "slspec/errors.hpp"

namespace slspec {

namespace {

using nlohmann::json;

double number(const json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size()) return out;
  }
  throw InvalidInput(std::string("expected a number for '") + what + "'");
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return obj.at(key);
}

Potential parse_q(const json& q) {
  if (!q.is_object()) throw InvalidInput("'q' must be an object");
  if (q.contains("const")) return number(q.at("const"), "const");
  if (q.contains("table")) {
    const json& rows = q.at("table");
    if (!rows.is_array()) throw InvalidInput("'table' must be an array of [x, q] pairs");
    SampledTable t;
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != 2) throw InvalidInput("table rows must be [x, q] pairs");
      t.x.push_back(number(row[0], "table x"));
      t.q.push_back(number(row[1], "table q"));
    }
    return t;
  }
  throw InvalidInput("'q' needs either 'const' or 'table'");
}

}  // namespace

ProblemSpec problem_from_json(const json& j) {
  const json& iv = field(j, "interval");
  if (!iv.is_array() || iv.size() != 2) throw InvalidInput("'interval' must be [a, b]");
  const double a = number(iv[0], "interval");
  const double b = number(iv[1], "interval");
  const double alpha = j.contains("alpha") ? number(j.at("alpha"), "alpha") : 0.0;
  const double beta = j.contains("beta") ? number(j.at("beta"), "beta") : 0.0;

  const json& ps = field(j, "pieces");
  if (!ps.is_array()) throw InvalidInput("'pieces' must be an array");
  std::vector<Piece> pieces;
  for (const json& p : ps) {
    pieces.push_back(Piece{number(field(p, "x0"), "x0"), number(field(p, "x1"), "x1"), number(field(p, "w"), "w"),
                           parse_q(field(p, "q"))});
  }
  return ProblemSpec(a, b, alpha, beta, PiecewiseCoefficient(std::move(pieces)));
}

json problem_to_json(const ProblemSpec& spec) {
  json pieces = json::array();
  for (const Piece& p : spec.coeff().pieces()) {
    json q;
    if (const auto* c = std::get_if<double>(&p.q)) {
      q["const"] = *c;
    } else {
      const auto& t = std::get<SampledTable>(p.q);
      json rows = json::array();
      for (std::size_t k = 0; k < t.x.size(); ++k) rows.push_back({t.x[k], t.q[k]});
      q["table"] = std::move(rows);
    }
    pieces.push_back({{"x0", p.x0}, {"x1", p.x1}, {"w", p.w}, {"q", std::move(q)}});
  }
  return {{"interval", {spec.a(), spec.b()}}, {"alpha", spec.alpha()}, {"beta", spec.beta()}, {"pieces", pieces}};
}

ProblemSpec read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open problem file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("problem file is not valid JSON: ") + e.what());
  }
  return problem_from_json(j);
}

void write_problem_file(const ProblemSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write problem file: " + path);
  out << problem_to_json(spec).dump(2) << '\n';
}

}  // namespace slspec

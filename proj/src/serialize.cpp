// SPDX-License-Identifier: Apache-2.0
#include "slspec/serialize.hpp"

#include <charconv>
#include <cmath>

namespace slspec {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class T>
json optional_number(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

// Quotes a CSV field when it holds a separator, quote or line break.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

json to_json(const EigenRecord& r) {
  return {{"re", number(r.lambda.real())},
          {"im", number(r.lambda.imag())},
          {"zeros_in_ab", r.zeros_in_ab},
          {"weighted_norm", number(r.weighted_norm)},
          {"residual", number(r.residual)},
          {"double_root", r.double_root}};
}

json to_json(const ScanResult& s) {
  json records = json::array();
  for (const EigenRecord& r : s.records) records.push_back(to_json(r));
  return {{"window", {number(s.window.lo), number(s.window.hi)}},
          {"records", std::move(records)},
          {"n_R_empirical", optional_number(s.n_R_empirical)},
          {"n_H_empirical", optional_number(s.n_H_empirical)},
          {"warnings", s.warnings}};
}

json to_json(const RichardsonReport& r) {
  const TailEvidence& t = r.tail;
  return {{"lambda_plus", optional_number(r.lambda_plus)},
          {"lambda_minus", optional_number(r.lambda_minus)},
          {"tail",
           {{"lambda_hi_checked", number(t.lambda_hi_checked)},
            {"lambda_lo_checked", number(t.lambda_lo_checked)},
            {"all_positive_above", number(t.all_positive_above)},
            {"all_negative_below", number(t.all_negative_below)},
            {"sturmian_top", t.sturmian_top},
            {"sturmian_bottom", t.sturmian_bottom},
            {"positive_run_top", t.positive_run_top},
            {"negative_run_bottom", t.negative_run_bottom}}},
          {"scan", to_json(r.scan)}};
}

json to_json(const BoundCertificate& c) {
  json trail = json::array();
  for (const TrailEntry& t : c.hypothesis_trail) {
    trail.push_back({{"condition", t.condition}, {"value", number(t.value)}, {"pass", t.pass}});
  }
  return {{"kind", to_string(c.kind)},
          {"bound", number(c.bound)},
          {"direction", to_string(c.direction)},
          {"hypothesis_trail", std::move(trail)},
          {"valid", c.valid}};
}

json to_json(const Classification& c) {
  json witnesses = json::array();
  for (const FormWitness& w : c.witnesses) {
    witnesses.push_back({{"form", w.form}, {"function", w.function}, {"value", number(w.value)}});
  }
  return {{"kind", to_string(c.kind)},
          {"r_definite", c.r_definite},
          {"l_definite", c.l_definite},
          {"w_sign", c.w_sign},
          {"lambda0", number(c.lambda0)},
          {"witnesses", std::move(witnesses)}};
}

json to_json(const DriftResult& d) {
  return {{"zero", number(d.zero)},
          {"finite_difference", number(d.finite_difference)},
          {"formula", number(d.formula)},
          {"step", number(d.step)}};
}

std::string records_to_csv(const std::vector<EigenRecord>& records) {
  std::string out = "re,im,zeros_in_ab,weighted_norm,residual,double_root\n";
  for (const EigenRecord& r : records) {
    out += format_double(r.lambda.real()) + ',' + format_double(r.lambda.imag()) + ',' +
           std::to_string(r.zeros_in_ab) + ',' + format_double(r.weighted_norm) + ',' + format_double(r.residual) +
           ',' + flag(r.double_root) + '\n';
  }
  return out;
}

std::string certificates_to_csv(const std::vector<BoundCertificate>& certs) {
  std::string out = "kind,bound,direction,valid,condition,value,pass\n";
  for (const BoundCertificate& c : certs) {
    for (const TrailEntry& t : c.hypothesis_trail) {
      out += std::string(to_string(c.kind)) + ',' + format_double(c.bound) + ',' + to_string(c.direction) + ',' +
             flag(c.valid) + ',' + csv_field(t.condition) + ',' + format_double(t.value) + ',' + flag(t.pass) + '\n';
    }
  }
  return out;
}

std::string classification_to_csv(const Classification& c) {
  return "kind,r_definite,l_definite,w_sign,lambda0\n" + std::string(to_string(c.kind)) + ',' + flag(c.r_definite) +
         ',' + flag(c.l_definite) + ',' + std::to_string(c.w_sign) + ',' + format_double(c.lambda0) + '\n';
}

std::string richardson_to_csv(const RichardsonReport& r) {
  return "lambda_plus,lambda_minus,sturmian_top,sturmian_bottom\n" + optional_field(r.lambda_plus) + ',' +
         optional_field(r.lambda_minus) + ',' + flag(r.tail.sturmian_top) + ',' + flag(r.tail.sturmian_bottom) + '\n';
}

std::string drift_to_csv(const DriftResult& d) {
  return "zero,finite_difference,formula,step\n" + format_double(d.zero) + ',' + format_double(d.finite_difference) +
         ',' + format_double(d.formula) + ',' + format_double(d.step) + '\n';
}

}  // namespace slspec

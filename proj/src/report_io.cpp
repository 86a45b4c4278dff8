#include "cbern/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cbern {

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

std::string optional_real(const std::optional<double>& v) {
  return v ? format_real(*v) : "null";
}

}  // namespace

std::string to_json_line(const BoundReport& r) {
  std::ostringstream o;
  o << "{\"inequality_id\":" << quoted(std::string(to_string(r.id))) << ",\"params\":";
  if (r.params) {
    o << "{\"n\":" << r.params->n() << ",\"m\":" << r.params->m();
    if (r.r) o << ",\"r\":" << *r.r;
    o << "}";
  } else {
    o << "null";
  }
  o << ",\"function_labels\":[";
  for (std::size_t i = 0; i < r.function_labels.size(); ++i)
    o << (i ? "," : "") << quoted(r.function_labels[i]);
  o << "],\"x\":" << optional_real(r.x) << ",\"lhs\":" << format_real(r.lhs)
    << ",\"rhs\":" << format_real(r.rhs) << ",\"margin\":" << format_real(r.margin)
    << ",\"status\":" << quoted(std::string(to_string(r.status)))
    << ",\"grid_slack\":" << format_real(r.grid_slack)
    << ",\"rhs_aux\":" << optional_real(r.rhs_aux)
    << ",\"upper_estimate\":" << (r.upper_estimate ? "true" : "false")
    << ",\"note\":" << quoted(r.note) << "}";
  return o.str();
}

std::string to_json(const SuiteSummary& s) {
  std::ostringstream o;
  o << "{\"total\":" << s.total << ",\"pass\":" << s.pass << ",\"grid_limited\":" << s.grid_limited
    << ",\"violated\":" << s.violated << ",\"errors\":" << s.errors << "}";
  return o.str();
}

SuiteSummary summary_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SuiteSummary s;
  s.total = j.at("total").get<std::size_t>();
  s.pass = j.at("pass").get<std::size_t>();
  s.grid_limited = j.at("grid_limited").get<std::size_t>();
  s.violated = j.at("violated").get<std::size_t>();
  s.errors = j.at("errors").get<std::size_t>();
  return s;
}

std::string csv_header() {
  return "inequality_id,n,m,r,function_labels,x,lhs,rhs,margin,status,grid_slack,rhs_aux,"
         "upper_estimate,note";
}

std::string to_csv_row(const BoundReport& r) {
  std::ostringstream o;
  o << to_string(r.id) << ',';
  if (r.params) o << r.params->n() << ',' << r.params->m();
  else o << ',';
  o << ',';
  if (r.r) o << *r.r;
  o << ',';
  for (std::size_t i = 0; i < r.function_labels.size(); ++i)
    o << (i ? ";" : "") << r.function_labels[i];
  o << ',' << (r.x ? format_real(*r.x) : "") << ',' << format_real(r.lhs) << ','
    << format_real(r.rhs) << ',' << format_real(r.margin) << ',' << to_string(r.status) << ','
    << format_real(r.grid_slack) << ',' << (r.rhs_aux ? format_real(*r.rhs_aux) : "") << ','
    << (r.upper_estimate ? "true" : "false") << ',';
  // Notes may contain commas; quote them CSV-style.
  std::string note = r.note;
  std::string escaped;
  for (char c : note) {
    if (c == '"') escaped += '"';
    escaped += c;
  }
  if (!note.empty()) o << '"' << escaped << '"';
  return o.str();
}

std::string to_text(const BoundReport& r) {
  std::ostringstream o;
  o << to_string(r.id);
  if (r.params) o << " n=" << r.params->n() << " m=" << r.params->m();
  if (r.r) o << " r=" << *r.r;
  o << " f=";
  for (std::size_t i = 0; i < r.function_labels.size(); ++i)
    o << (i ? "," : "") << r.function_labels[i];
  if (r.x) o << " x=" << *r.x;
  char buf[160];
  std::snprintf(buf, sizeof buf, "  lhs=%.6e rhs=%.6e margin=%+.3e  ", r.lhs, r.rhs, r.margin);
  o << buf << to_string(r.status);
  if (!r.note.empty()) o << "  (" << r.note << ")";
  return o.str();
}

std::string rule_to_json(const QuadratureRule& rule) {
  std::ostringstream o;
  o << "{\"n\":" << rule.params.n() << ",\"m\":" << rule.params.m() << ",\"nodes\":[";
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    o << (i ? "," : "") << '"' << format_real(rule.nodes[i]) << '"';
  o << "],\"weights\":[";
  for (std::size_t i = 0; i < rule.weights.size(); ++i)
    o << (i ? "," : "") << '"' << format_real(rule.weights[i]) << '"';
  o << "]}";
  return o.str();
}

QuadratureRule rule_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  QuadratureRule rule{OperatorParams(j.at("n").get<int>(), j.at("m").get<int>()), {}, {}};
  for (const auto& v : j.at("nodes")) rule.nodes.push_back(std::stod(v.get<std::string>()));
  for (const auto& v : j.at("weights")) rule.weights.push_back(std::stod(v.get<std::string>()));
  if (rule.nodes.size() != rule.weights.size())
    throw std::invalid_argument("rule JSON: nodes and weights differ in length");
  return rule;
}

OutputFormat parse_output_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw std::invalid_argument("unknown output format: " + s);
}

void write_reports(std::ostream& out, const SuiteResult& result, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::Json:
      for (const auto& r : result.reports) out << to_json_line(r) << '\n';
      out << to_json(result.summary) << '\n';
      break;
    case OutputFormat::Csv:
      out << csv_header() << '\n';
      for (const auto& r : result.reports) out << to_csv_row(r) << '\n';
      break;
    case OutputFormat::Text:
      for (const auto& r : result.reports) out << to_text(r) << '\n';
      out << "total " << result.summary.total << ", pass " << result.summary.pass
          << ", grid-limited " << result.summary.grid_limited << ", violated "
          << result.summary.violated << ", errors " << result.summary.errors << '\n';
      break;
  }
}

}  // namespace cbern

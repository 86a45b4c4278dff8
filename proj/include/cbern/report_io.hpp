#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cbern/checks.hpp"
#include "cbern/quadrature.hpp"
#include "cbern/suite.hpp"

namespace cbern {

/// %.17g, the round-trip form used in every machine-readable output.
std::string format_real(double v);

/// One JSON object per line, keys in declaration order of BoundReport.
std::string to_json_line(const BoundReport& r);
std::string to_json(const SuiteSummary& s);
SuiteSummary summary_from_json(const std::string& text);

std::string csv_header();
std::string to_csv_row(const BoundReport& r);

/// Human-readable single line.
std::string to_text(const BoundReport& r);

/// {"n":..,"m":..,"nodes":["..."],"weights":["..."]}, numbers as decimal
/// strings with 17 significant digits.
std::string rule_to_json(const QuadratureRule& rule);
QuadratureRule rule_from_json(const std::string& text);

enum class OutputFormat { Json, Csv, Text };

OutputFormat parse_output_format(const std::string& s);

/// Writes every report, then the summary (JSON and text formats only).
void write_reports(std::ostream& out, const SuiteResult& result, OutputFormat fmt);

}  // namespace cbern

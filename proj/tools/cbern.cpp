// cbern: command-line front end for the composite Bernstein library.
//
// Exit codes: 0 success, 1 verification found a violated bound, 2 usage
// error, 3 I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cbern/bernstein.hpp"
#include "cbern/checks.hpp"
#include "cbern/moduli.hpp"
#include "cbern/quadrature.hpp"
#include "cbern/report_io.hpp"
#include "cbern/suite.hpp"
#include "cbern/transfer.hpp"

namespace {

using namespace cbern;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::optional<int> n;
  std::optional<int> m;
  std::optional<std::uint32_t> r;
  std::optional<std::string> fn;
  std::optional<std::string> fn2;
  std::optional<double> x;
  int grid = 201;
  int modgrid = kDefaultModulusGrid;
  double tol = kDefaultIntegralTolerance;
  std::string out_format = "json";
  std::optional<std::string> out_path;
  std::vector<std::string> only;
};

const RealFunction& lookup(const std::optional<std::string>& label, const char* flag) {
  if (!label) throw UsageError(std::string("missing required option ") + flag);
  try {
    return corpus_function(*label);
  } catch (const std::invalid_argument&) {
    std::string valid;
    for (const auto& l : corpus_labels()) valid += (valid.empty() ? "" : ", ") + l;
    throw UsageError("unknown function '" + *label + "'; valid labels: " + valid);
  }
}

OperatorParams params_of(const CliConfig& c) {
  if (!c.n || !c.m) throw UsageError("--n and --m are required");
  if (*c.n < 1 || *c.n > kMaxDegree) throw UsageError("--n must be in [1, 64]");
  if (*c.m < 1) throw UsageError("--m must be >= 1");
  return OperatorParams(*c.n, *c.m);
}

OutputFormat format_of(const CliConfig& c) {
  try {
    return parse_output_format(c.out_format);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<double> sample_points(const CliConfig& c) {
  if (c.x) return {*c.x};
  if (c.grid < 2) throw UsageError("--grid must be >= 2");
  std::vector<double> xs;
  for (int i = 0; i < c.grid; ++i) xs.push_back(static_cast<double>(i) / (c.grid - 1));
  return xs;
}

void validate(const CliConfig& c) {
  if (c.x && !(*c.x >= 0.0 && *c.x <= 1.0)) throw UsageError("--x must lie in [0, 1]");
  if (c.modgrid < 64) throw UsageError("--modgrid must be >= 64");
  if (!(c.tol >= 1e-14)) throw UsageError("--tol must be >= 1e-14");
}

// A table of named real columns, written in the requested format.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  void add(std::vector<std::optional<double>> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& out, OutputFormat fmt) const {
    switch (fmt) {
      case OutputFormat::Json:
        for (const auto& row : rows_) {
          out << '{';
          for (std::size_t i = 0; i < columns_.size(); ++i)
            out << (i ? "," : "") << '"' << columns_[i] << "\":" << cell(row[i], "null");
          out << "}\n";
        }
        break;
      case OutputFormat::Csv:
        for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
        out << '\n';
        for (const auto& row : rows_) {
          for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i], "");
          out << '\n';
        }
        break;
      case OutputFormat::Text:
        for (std::size_t i = 0; i < columns_.size(); ++i) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%-16s", columns_[i].c_str());
          out << buf;
        }
        out << '\n';
        for (const auto& row : rows_) {
          for (const auto& v : row) {
            char buf[32];
            if (v) std::snprintf(buf, sizeof buf, "%-16.9g", *v);
            else std::snprintf(buf, sizeof buf, "%-16s", "-");
            out << buf;
          }
          out << '\n';
        }
        break;
    }
  }

 private:
  static std::string cell(const std::optional<double>& v, const char* missing) {
    return v ? format_real(*v) : missing;
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<std::optional<double>>> rows_;
};

// Writes to --out-path when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::optional<std::string>& path) {
    if (path) {
      file_ = std::make_unique<std::ofstream>(*path);
      if (!*file_) throw IoError("cannot open output file '" + *path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int cmd_eval(const CliConfig& c) {
  const auto& f = lookup(c.fn, "--fn");
  const auto p = params_of(c);
  const auto fmt = format_of(c);
  const FunctionData data(f, CheckConfig{c.modgrid, c.tol, 501});
  Table t({"x", "f", "Bf", "abs_error", "second_moment", "paltanea_rhs"});
  for (double x : sample_points(c)) {
    const double fx = f(x);
    const double bx = composite_eval(f, p, x);
    const double moment = second_moment(p, x);
    t.add({x, fx, bx, std::abs(bx - fx), moment, 1.5 * data.moduli().omega2(std::sqrt(moment))});
  }
  Sink sink(c.out_path);
  t.write(sink.stream(), fmt);
  sink.finish();
  return kExitOk;
}

int cmd_quad(const CliConfig& c) {
  const auto& f = lookup(c.fn, "--fn");
  const auto p = params_of(c);
  const auto fmt = format_of(c);
  const FunctionData data(f, CheckConfig{c.modgrid, c.tol, 501});
  const double I = apply_rule(build_rule(p), f);
  const double ref = data.integral();
  std::optional<double> t62;
  if (f.has_second_derivative()) t62 = c2_error_bound(p, f);
  const double t63 = 2.25 * data.moduli().omega2(1.0 / (p.m() * std::sqrt(6.0 * p.n())));
  Table t({"I_nm", "reference", "abs_error", "t62_bound", "t63ii_bound"});
  t.add({I, ref, std::abs(ref - I), t62, t63});
  Sink sink(c.out_path);
  t.write(sink.stream(), fmt);
  sink.finish();
  return kExitOk;
}

int cmd_iterate(const CliConfig& c) {
  const auto& f = lookup(c.fn, "--fn");
  const auto p = params_of(c);
  const auto fmt = format_of(c);
  if (!c.r) throw UsageError("--r is required for iterate");
  const IterateEvaluator it(f, p, *c.r);
  Table t({"x", "f", "iterate", "interp", "gap"});
  for (double x : sample_points(c)) {
    const double v = it(x);
    const double s = piecewise_linear_interp(f, p.m(), x);
    t.add({x, f(x), v, s, std::abs(v - s)});
  }
  Sink sink(c.out_path);
  t.write(sink.stream(), fmt);
  sink.finish();
  return kExitOk;
}

int cmd_moduli(const CliConfig& c) {
  const auto& f = lookup(c.fn, "--fn");
  const auto fmt = format_of(c);
  const ModulusTable table(f, c.modgrid);
  Table t({"t", "omega1", "omega2", "omega_tilde"});
  for (double x : sample_points(c))
    t.add({x, table.omega1(x), table.omega2(x), table.omega_tilde(x)});
  Sink sink(c.out_path);
  t.write(sink.stream(), fmt);
  sink.finish();
  return kExitOk;
}

int cmd_rule_export(const CliConfig& c) {
  const auto p = params_of(c);
  Sink sink(c.out_path);
  sink.stream() << rule_to_json(build_rule(p)) << '\n';
  sink.finish();
  return kExitOk;
}

int cmd_verify(const CliConfig& c) {
  const auto fmt = format_of(c);
  SuiteConfig cfg = default_suite_config();
  cfg.check = CheckConfig{c.modgrid, c.tol, 501};
  cfg.threads = threads_from_env();
  if (c.n || c.m) cfg.params = {params_of(c)};
  if (c.r) {
    if (*c.r < 1) throw UsageError("--r must be >= 1 for verify");
    cfg.r_list = {*c.r};
  }
  if (c.x) cfg.x_grid = {*c.x};
  if (c.fn) cfg.fn = lookup(c.fn, "--fn").label;
  if (c.fn2) {
    if (!c.fn) throw UsageError("--fn2 requires --fn");
    cfg.fn2 = lookup(c.fn2, "--fn2").label;
  }
  for (const auto& id : c.only) {
    try {
      cfg.only.insert(parse_inequality_id(id));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  const SuiteResult result = run_suite(cfg);
  Sink sink(c.out_path);
  write_reports(sink.stream(), result, fmt);
  sink.finish();
  return result.summary.violated == 0 ? kExitOk : kExitViolation;
}

void add_common(CLI::App* sub, CliConfig& c) {
  sub->add_option("--n", c.n, "Bernstein degree per piece");
  sub->add_option("--m", c.m, "number of pieces");
  sub->add_option("--fn", c.fn, "corpus function label");
  sub->add_option("--x", c.x, "single evaluation point in [0,1]");
  sub->add_option("--grid", c.grid, "output sampling resolution")->capture_default_str();
  sub->add_option("--modgrid", c.modgrid, "modulus grid size N")->capture_default_str();
  sub->add_option("--tol", c.tol, "reference integrator tolerance")->capture_default_str();
  sub->add_option("--out-format", c.out_format, "json, csv or text")->capture_default_str();
  sub->add_option("--out-path", c.out_path, "write output to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite Bernstein operators, quadrature and bound verification"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto* eval = app.add_subcommand("eval", "evaluate the composite operator");
  auto* quad = app.add_subcommand("quad", "composite quadrature and its error bounds");
  auto* iterate = app.add_subcommand("iterate", "iterates of the composite operator");
  auto* moduli = app.add_subcommand("moduli", "moduli of continuity estimates");
  auto* verify = app.add_subcommand("verify", "run the inequality verification suite");
  auto* rule = app.add_subcommand("rule-export", "export the quadrature rule as JSON");
  for (auto* sub : {eval, quad, iterate, moduli, verify, rule}) add_common(sub, cfg);
  iterate->add_option("--r", cfg.r, "number of operator applications");
  verify->add_option("--r", cfg.r, "restrict the iteration counts to this one");
  verify->add_option("--fn2", cfg.fn2, "second function for pair checks");
  verify->add_option("--only", cfg.only, "restrict to these inequality ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    validate(cfg);
    if (*eval) return cmd_eval(cfg);
    if (*quad) return cmd_quad(cfg);
    if (*iterate) return cmd_iterate(cfg);
    if (*moduli) return cmd_moduli(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*rule) return cmd_rule_export(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

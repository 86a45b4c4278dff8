#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cbern/checks.hpp"

namespace cbern {

struct SuiteConfig {
  std::vector<OperatorParams> params;
  std::vector<RealFunction> corpus;
  std::vector<double> x_grid;
  std::vector<std::uint32_t> r_list;
  /// Restrict to these inequalities; empty runs all of them.
  std::set<InequalityId> only;
  /// Restrict single-function checks to fn, and pair checks to (fn, fn2).
  /// fn2 defaults to fn when only fn is given.
  std::optional<std::string> fn;
  std::optional<std::string> fn2;
  CheckConfig check;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// n, m in {1,2,4,8}; the built-in corpus; x = j/20; r in {1,5,25,125}.
SuiteConfig default_suite_config();

struct SuiteSummary {
  std::size_t total = 0;
  std::size_t pass = 0;
  std::size_t grid_limited = 0;
  std::size_t violated = 0;
  std::size_t errors = 0;

  friend bool operator==(const SuiteSummary&, const SuiteSummary&) = default;
};

struct SuiteResult {
  std::vector<BoundReport> reports;
  SuiteSummary summary;
};

SuiteSummary summarize(const std::vector<BoundReport>& reports);

/// Runs every applicable check over the grid. Reports are ordered by
/// inequality, then (n, m, r), then corpus position of the labels, then x,
/// whatever the thread count. A check that throws yields an error report.
///
/// Checks needing g'' run on C2 members only; the integral limit runs on
/// members with a bounded first derivative. Pair checks take unordered
/// pairs (i <= j in corpus order).
SuiteResult run_suite(const SuiteConfig& cfg);

/// CB_SEED_THREADS, or 0 when unset or malformed.
unsigned threads_from_env();

}  // namespace cbern

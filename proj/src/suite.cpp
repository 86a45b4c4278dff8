#include "cbern/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>

namespace cbern {

SuiteConfig default_suite_config() {
  SuiteConfig cfg;
  for (int n : {1, 2, 4, 8})
    for (int m : {1, 2, 4, 8}) cfg.params.emplace_back(n, m);
  cfg.corpus = corpus();
  for (int j = 0; j <= 20; ++j) cfg.x_grid.push_back(j / 20.0);
  cfg.r_list = {1, 5, 25, 125};
  return cfg;
}

SuiteSummary summarize(const std::vector<BoundReport>& reports) {
  SuiteSummary s;
  s.total = reports.size();
  for (const auto& r : reports) {
    switch (r.status) {
      case Status::Pass: ++s.pass; break;
      case Status::GridLimited: ++s.grid_limited; break;
      case Status::Violated: ++s.violated; break;
      case Status::Error: ++s.errors; break;
    }
  }
  return s;
}

unsigned threads_from_env() {
  const char* v = std::getenv("CB_SEED_THREADS");
  if (!v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 0) return 0;
  return static_cast<unsigned>(n);
}

namespace {

// Runs jobs[i] into out[i]; the output order never depends on scheduling.
void run_parallel(std::vector<std::function<void()>>& jobs, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) jobs[i]();
  };
  if (threads == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& cfg) {
  const auto wanted = [&](InequalityId id) { return cfg.only.empty() || cfg.only.contains(id); };

  std::vector<std::size_t> singles;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const auto index_of = [&](const std::string& label) {
    for (std::size_t i = 0; i < cfg.corpus.size(); ++i)
      if (cfg.corpus[i].label == label) return i;
    throw std::invalid_argument("unknown function label: " + label);
  };
  if (cfg.fn) {
    const std::size_t i = index_of(*cfg.fn);
    const std::size_t j = cfg.fn2 ? index_of(*cfg.fn2) : i;
    singles.push_back(i);
    pairs.emplace_back(std::min(i, j), std::max(i, j));
  } else {
    for (std::size_t i = 0; i < cfg.corpus.size(); ++i) {
      singles.push_back(i);
      for (std::size_t j = i; j < cfg.corpus.size(); ++j) pairs.emplace_back(i, j);
    }
  }

  // Per-function caches, built in parallel.
  std::vector<std::size_t> used = singles;
  for (auto [i, j] : pairs) {
    used.push_back(i);
    used.push_back(j);
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<std::unique_ptr<FunctionData>> data(cfg.corpus.size());
  {
    std::vector<std::function<void()>> jobs;
    for (std::size_t i : used)
      jobs.emplace_back([&, i] {
        try {
          data[i] = std::make_unique<FunctionData>(cfg.corpus[i], cfg.check);
        } catch (const std::exception&) {
          // Left empty; every check on this function reports the failure.
        }
      });
    run_parallel(jobs, cfg.threads);
  }

  std::vector<BoundReport> reports;
  std::vector<std::function<void()>> jobs;
  const auto add = [&](BoundReport skeleton, std::function<BoundReport()> check) {
    const std::size_t slot = reports.size();
    reports.push_back(std::move(skeleton));
    jobs.emplace_back([&reports, slot, check = std::move(check)] {
      try {
        reports[slot] = check();
      } catch (const std::exception& e) {
        reports[slot].status = Status::Error;
        reports[slot].note = e.what();
      }
    });
  };
  const auto skeleton = [](InequalityId id, std::optional<OperatorParams> p,
                           std::optional<std::uint32_t> r, std::vector<std::string> labels,
                           std::optional<double> x) {
    BoundReport b;
    b.id = id;
    b.params = p;
    b.r = r;
    b.function_labels = std::move(labels);
    b.x = x;
    return b;
  };
  const auto D = [&](std::size_t i) -> const FunctionData& {
    if (!data[i])
      throw std::runtime_error("could not prepare function '" + cfg.corpus[i].label + "'");
    return *data[i];
  };
  const auto L = [&](std::size_t i) { return cfg.corpus[i].label; };
  const auto has_c2 = [&](std::size_t i) { return cfg.corpus[i].has_second_derivative(); };
  const auto has_d1 = [&](std::size_t i) { return cfg.corpus[i].first_derivative.has_value(); };

  for (InequalityId id : kAllInequalities) {
    if (!wanted(id)) continue;
    if (id == InequalityId::C7_Limit) {
      for (auto [i, j] : pairs) {
        if (!has_d1(i) || !has_d1(j)) continue;
        add(skeleton(id, std::nullopt, std::nullopt, {L(i), L(j)}, std::nullopt),
            [&, i, j] { return check_integral_limit(D(i), D(j)); });
      }
      continue;
    }
    for (const OperatorParams& p : cfg.params) {
      switch (id) {
        case InequalityId::P3_2:
          for (std::size_t i : singles)
            for (double x : cfg.x_grid)
              add(skeleton(id, p, std::nullopt, {L(i)}, x),
                  [&, i, p, x] { return check_paltanea(D(i), p, x); });
          break;
        case InequalityId::P4_3_Pointwise:
          for (std::uint32_t r : cfg.r_list)
            for (std::size_t i : singles)
              for (double x : cfg.x_grid)
                add(skeleton(id, p, r, {L(i)}, x),
                    [&, i, p, r, x] { return check_iterate(D(i), p, r, x); });
          break;
        case InequalityId::P4_3_Uniform:
          for (std::uint32_t r : cfg.r_list)
            for (std::size_t i : singles)
              add(skeleton(id, p, r, {L(i)}, std::nullopt),
                  [&, i, p, r] { return check_iterate_uniform(D(i), p, r); });
          break;
        case InequalityId::P5_2:
          for (auto [i, j] : pairs)
            for (double x : cfg.x_grid)
              add(skeleton(id, p, std::nullopt, {L(i), L(j)}, x),
                  [&, i, j, p, x] { return check_gruss_operator(D(i), D(j), p, x); });
          break;
        case InequalityId::T6_2:
          for (std::size_t i : singles)
            if (has_c2(i))
              add(skeleton(id, p, std::nullopt, {L(i)}, std::nullopt),
                  [&, i, p] { return check_quadrature_c2(D(i), p); });
          break;
        case InequalityId::T6_3i:
          for (std::size_t i : singles)
            add(skeleton(id, p, std::nullopt, {L(i)}, std::nullopt),
                [&, i, p] { return check_quadrature_kfunc(D(i), p); });
          break;
        case InequalityId::T6_3ii:
          for (std::size_t i : singles)
            add(skeleton(id, p, std::nullopt, {L(i)}, std::nullopt),
                [&, i, p] { return check_quadrature_omega2(D(i), p); });
          break;
        case InequalityId::T6_4_Specialized:
          for (std::size_t i : singles)
            add(skeleton(id, p, std::nullopt, {L(i)}, std::nullopt),
                [&, i, p] { return check_gk_general(D(i), gk_specialization(p), p); });
          break;
        case InequalityId::P7_2:
          for (auto [i, j] : pairs)
            add(skeleton(id, p, std::nullopt, {L(i), L(j)}, std::nullopt),
                [&, i, j, p] { return check_gruss_quadrature(D(i), D(j), p); });
          break;
        case InequalityId::C7_Limit: break;
      }
    }
  }

  run_parallel(jobs, cfg.threads);
  SuiteResult result{std::move(reports), {}};
  result.summary = summarize(result.reports);
  return result;
}

}  // namespace cbern

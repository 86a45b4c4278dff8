#pragma once

#include <span>
#include <string>
#include <vector>

#include "cbern/bernstein.hpp"
#include "cbern/function.hpp"

namespace cbern {

inline constexpr int kDefaultModulusGrid = 2048;

enum class ModulusKind { Omega1, Omega2, OmegaTilde };

/// A modulus sampled on the steps t_j = j * length / N, j = 0..N.
struct ModulusEstimate {
  ModulusKind kind;
  Interval domain;
  int grid_size;
  std::vector<double> steps;
  std::vector<double> values;
};

/// Sup-estimates of the moduli of one function on a uniform grid of N cells.
///
/// Grid sups are taken over all grid pairs (first modulus) or grid centres
/// and grid half-steps (second modulus). A query at an off-grid step t also
/// tries the exact step t from every grid point and from the two
/// boundary-aligned points, so the estimate is continuous in t to within
/// the grid resolution. Every value is a lower estimate of the true sup.
///
/// The table holds a copy of the function and is immutable after
/// construction.
class ModulusTable {
 public:
  explicit ModulusTable(RealFunction f, int grid_size = kDefaultModulusGrid);
  ModulusTable(RealFunction f, Interval domain, int grid_size = kDefaultModulusGrid);

  const RealFunction& function() const { return f_; }
  const Interval& domain() const { return domain_; }
  int grid_size() const { return n_; }

  /// omega(f; t) = sup |f(x) - f(y)| over |x - y| <= t.
  double omega1(double t) const;
  /// omega_2(f; delta) = sup |f(x-h) - 2f(x) + f(x+h)| over x +- h in the
  /// domain, |h| <= delta.
  double omega2(double delta) const;
  /// Least concave majorant of omega1 on [0, length]; omega(f, length)
  /// beyond that.
  double omega_tilde(double t) const;

  /// 2 * (largest change of f across one grid cell). Bounds how far a grid
  /// sup can sit below the true sup.
  double grid_slack() const { return slack_; }

  /// Values on the stored step grid.
  ModulusEstimate estimate(ModulusKind kind) const;

 private:
  double step(int j) const { return domain_.length() * j / n_; }
  double grid_point(int i) const;
  double hull_at(double t) const;

  RealFunction f_;
  Interval domain_;
  int n_;
  std::vector<double> samples_;
  std::vector<double> omega1_grid_;  // prefix maxima over lags
  std::vector<double> omega2_grid_;  // prefix maxima over half-steps, j = 0..N/2
  std::vector<double> hull_t_;
  std::vector<double> hull_v_;
  double slack_ = 0.0;
};

double omega1(const RealFunction& f, const Interval& iv, double t,
              int grid_size = kDefaultModulusGrid);
double omega2(const RealFunction& f, const Interval& iv, double delta,
              int grid_size = kDefaultModulusGrid);
double omega_tilde(const RealFunction& f, double t, int grid_size = kDefaultModulusGrid);

/// Least concave majorant at t of the piecewise-linear function through
/// (steps[j], values[j]) and the origin. steps must be increasing and start
/// at 0; beyond the last step the last value is returned.
double concave_majorant_at(std::span<const double> steps, std::span<const double> values,
                           double t);

struct KFunctionalEstimate {
  double delta;
  double value_upper;
  std::string witness_label;
};

/// Candidate smoothings g for the K-functional, with the two sampled norms
/// the functional needs. Independent of delta, so one table serves every
/// delta.
class KFunctional {
 public:
  /// Candidates must carry second derivatives. The zero function, and f
  /// itself when f is C2, are always included. With no candidates, a
  /// constant f(1/2) is added.
  KFunctional(const RealFunction& f, const std::vector<RealFunction>& candidates);

  KFunctionalEstimate at(double delta) const;

  struct Entry {
    std::string label;
    double distance;   // sampled ||f - g||
    double curvature;  // sampled ||g''||
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Classical Bernstein polynomial B_N f on [0,1] with exact first and
/// second derivatives.
RealFunction bernstein_smoothing(const RealFunction& f, int degree);

/// B_N f for N in {4, 8, 16, 32, 64} plus the constant f(1/2).
std::vector<RealFunction> default_k_candidates(const RealFunction& f);

/// Upper estimate of K(delta, f; C0, C2) = inf ||f - g|| + delta ||g''||.
KFunctionalEstimate k_functional_upper(const RealFunction& f, double delta,
                                       const std::vector<RealFunction>& candidates);

}  // namespace cbern

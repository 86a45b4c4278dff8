#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cbern/bernstein.hpp"
#include "cbern/function.hpp"

namespace cbern {

/// I_{n,m}(f) = integral over [0,1] of B-bar_{n,m}(f), as a rule on the
/// distinct nodes j/(mn). Piece endpoints shared by two pieces carry twice
/// the weight 1/(m(n+1)).
struct QuadratureRule {
  OperatorParams params;
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule build_rule(const OperatorParams& p);

double apply_rule(const QuadratureRule& rule, const RealFunction& f);

/// The per-piece double sum (1/(m(n+1))) sum_k sum_i f((kn-n+i)/(mn)),
/// visiting shared nodes twice. Equal to apply_rule up to rounding.
double apply_rule_double_sum(const OperatorParams& p, const RealFunction& f);

struct VarianceValue {
  OperatorParams params;
  double value;
};

/// I(e2) - I(e1)^2 = 1/12 + 1/(6 m^2 n).
VarianceValue variance(const OperatorParams& p);

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultIntegralTolerance = 1e-12;
inline constexpr int kMaxBisectionDepth = 60;

/// Globally adaptive Gauss-Kronrod (7/15) integration over [a,b]: the
/// interval with the largest error estimate is bisected until the summed
/// estimate drops below abs_tol. Throws ConvergenceError when an interval
/// would need to be split deeper than kMaxBisectionDepth.
double reference_integral(const Scalar& f, double a, double b,
                          double abs_tol = kDefaultIntegralTolerance);
double reference_integral(const RealFunction& f,
                          double abs_tol = kDefaultIntegralTolerance);

/// ||g''|| (2001 samples) / (12 m^2 n).
double c2_error_bound(const OperatorParams& p, const RealFunction& g);

/// Sampled sup norm of g'' on [0,1].
double sup_second_derivative(const RealFunction& g, int samples = 2001);

}  // namespace cbern

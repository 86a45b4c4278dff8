#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbern/bernstein.hpp"
#include "cbern/function.hpp"
#include "cbern/moduli.hpp"
#include "cbern/quadrature.hpp"

namespace cbern {

/// Inequalities in report order.
enum class InequalityId {
  P3_2,
  P4_3_Pointwise,
  P4_3_Uniform,
  P5_2,
  T6_2,
  T6_3i,
  T6_3ii,
  T6_4_Specialized,
  P7_2,
  C7_Limit,
};

inline constexpr InequalityId kAllInequalities[] = {
    InequalityId::P3_2,   InequalityId::P4_3_Pointwise, InequalityId::P4_3_Uniform,
    InequalityId::P5_2,   InequalityId::T6_2,           InequalityId::T6_3i,
    InequalityId::T6_3ii, InequalityId::T6_4_Specialized, InequalityId::P7_2,
    InequalityId::C7_Limit};

std::string_view to_string(InequalityId id);
InequalityId parse_inequality_id(std::string_view s);

enum class Status { Pass, GridLimited, Violated, Error };

std::string_view to_string(Status s);

/// One verified instance of an inequality lhs <= rhs.
struct BoundReport {
  InequalityId id = InequalityId::P3_2;
  std::optional<OperatorParams> params;
  std::optional<std::uint32_t> r;
  std::vector<std::string> function_labels;
  std::optional<double> x;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  Status status = Status::Pass;
  /// How far below zero the margin may fall and still be blamed on the
  /// finite modulus grid and rounding.
  double grid_slack = 0.0;
  /// Second right-hand side where one exists (C7: ||f'|| ||g'|| / 12).
  std::optional<double> rhs_aux;
  /// Set when rhs is only an upper estimate of the true bound (K-functional).
  bool upper_estimate = false;
  std::string note;
};

/// pass when margin >= 0; grid-limited when margin is in [-slack, 0).
Status classify(double margin, double slack);

struct CheckConfig {
  int modulus_grid = kDefaultModulusGrid;
  double integral_tol = kDefaultIntegralTolerance;
  int uniform_samples = 501;
};

/// Derived quantities of one function shared by every check that uses it.
class FunctionData {
 public:
  FunctionData(RealFunction f, const CheckConfig& cfg = {});

  const RealFunction& function() const { return table_.function(); }
  const std::string& label() const { return function().label; }
  const ModulusTable& moduli() const { return table_; }
  double integral() const { return integral_; }
  const KFunctional& k_functional() const { return *k_; }
  /// max |f| on the modulus grid.
  double sup_norm() const { return sup_norm_; }
  const CheckConfig& config() const { return cfg_; }

 private:
  CheckConfig cfg_;
  ModulusTable table_;
  double integral_;
  std::shared_ptr<const KFunctional> k_;
  double sup_norm_ = 0.0;
};

struct GonskaKovachevaParams {
  double gamma;
  double alpha;
  double beta0;
  double beta1;
  double beta2;
  double h;
};

/// gamma = 1, alpha = 2, beta0 = beta1 = 0, beta2 = 1/(12 m^2 n),
/// h = 1/sqrt(6 m^2 n).
GonskaKovachevaParams gk_specialization(const OperatorParams& p);

/// gamma{beta0 ||f|| + (2 beta1/h) omega(f;h)
///       + (3/4)(alpha + beta0 + 2 beta1/h + 2 beta2/h^2) omega_2(f;h)}.
double gk_bound(const FunctionData& f, const GonskaKovachevaParams& gkp);

/// [1 + M2/(2h^2)] omega_2(f; h) for any h > 0.
double paltanea_general_bound(const FunctionData& f, const OperatorParams& p, double x,
                              double h);

BoundReport check_paltanea(const FunctionData& f, const OperatorParams& p, double x,
                           std::optional<double> h = std::nullopt);
BoundReport check_iterate(const FunctionData& f, const OperatorParams& p, std::uint32_t r,
                          double x);
BoundReport check_iterate_uniform(const FunctionData& f, const OperatorParams& p,
                                  std::uint32_t r);
BoundReport check_gruss_operator(const FunctionData& f, const FunctionData& g,
                                 const OperatorParams& p, double x);
BoundReport check_quadrature_c2(const FunctionData& g, const OperatorParams& p);
BoundReport check_quadrature_kfunc(const FunctionData& f, const OperatorParams& p);
BoundReport check_quadrature_omega2(const FunctionData& f, const OperatorParams& p);
BoundReport check_gk_general(const FunctionData& f, const GonskaKovachevaParams& gkp,
                             const OperatorParams& p);
BoundReport check_gruss_quadrature(const FunctionData& f, const FunctionData& g,
                                   const OperatorParams& p);
BoundReport check_integral_limit(const FunctionData& f, const FunctionData& g);

}  // namespace cbern

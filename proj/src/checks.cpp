#include "cbern/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cbern/transfer.hpp"

namespace cbern {

namespace {

struct IdName {
  InequalityId id;
  std::string_view name;
};

constexpr IdName kIdNames[] = {
    {InequalityId::P3_2, "P3.2"},
    {InequalityId::P4_3_Pointwise, "P4.3-pointwise"},
    {InequalityId::P4_3_Uniform, "P4.3-uniform"},
    {InequalityId::P5_2, "P5.2"},
    {InequalityId::T6_2, "T6.2"},
    {InequalityId::T6_3i, "T6.3i"},
    {InequalityId::T6_3ii, "T6.3ii"},
    {InequalityId::T6_4_Specialized, "T6.4-specialized"},
    {InequalityId::P7_2, "P7.2"},
    {InequalityId::C7_Limit, "C7-limit"},
};

// Rounding allowance on top of the modulus slack.
double rounding(double lhs, double rhs) {
  return 64.0 * std::numeric_limits<double>::epsilon() *
         std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

BoundReport finish(BoundReport r, double modulus_slack) {
  r.margin = r.rhs - r.lhs;
  r.grid_slack = modulus_slack + rounding(r.lhs, r.rhs);
  r.status = classify(r.margin, r.grid_slack);
  return r;
}

// Slack of (1/4) omega~(f;t) omega~(g;t) when each factor may sit up to its
// table's grid slack below the true value.
double product_slack(double wf, double sf, double wg, double sg) {
  return 0.25 * ((wf + sf) * (wg + sg) - wf * wg);
}

double quadrature_error(const FunctionData& f, const OperatorParams& p) {
  return std::abs(f.integral() - apply_rule(build_rule(p), f.function()));
}

double sup_first_derivative(const RealFunction& f) {
  if (!f.first_derivative)
    throw std::invalid_argument("function '" + f.label + "' has no first derivative");
  constexpr int samples = 2001;
  double s = 0.0;
  for (int i = 0; i < samples; ++i)
    s = std::max(s, std::abs((*f.first_derivative)(static_cast<double>(i) / (samples - 1))));
  return s;
}

}  // namespace

std::string_view to_string(InequalityId id) {
  for (const auto& e : kIdNames)
    if (e.id == id) return e.name;
  return "?";
}

InequalityId parse_inequality_id(std::string_view s) {
  for (const auto& e : kIdNames)
    if (e.name == s) return e.id;
  throw std::invalid_argument("unknown inequality id: " + std::string(s));
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::GridLimited: return "grid-limited";
    case Status::Violated: return "violated";
    case Status::Error: return "error";
  }
  return "?";
}

Status classify(double margin, double slack) {
  if (margin >= 0.0) return Status::Pass;
  if (margin >= -slack) return Status::GridLimited;
  return Status::Violated;
}

FunctionData::FunctionData(RealFunction f, const CheckConfig& cfg)
    : cfg_(cfg),
      table_(std::move(f), cfg.modulus_grid),
      integral_(reference_integral(table_.function(), cfg.integral_tol)),
      k_(std::make_shared<const KFunctional>(table_.function(),
                                             default_k_candidates(table_.function()))) {
  const int n = table_.grid_size();
  for (int i = 0; i <= n; ++i)
    sup_norm_ = std::max(sup_norm_, std::abs(table_.function()(static_cast<double>(i) / n)));
}

GonskaKovachevaParams gk_specialization(const OperatorParams& p) {
  const double m2n = static_cast<double>(p.m()) * p.m() * p.n();
  return {1.0, 2.0, 0.0, 0.0, 1.0 / (12.0 * m2n), 1.0 / std::sqrt(6.0 * m2n)};
}

namespace {

void require_gk(const GonskaKovachevaParams& g) {
  if (g.gamma < 0 || g.alpha < 0 || g.beta0 < 0 || g.beta1 < 0 || g.beta2 < 0)
    throw std::invalid_argument("Gonska-Kovacheva constants must be nonnegative");
  if (!(g.h > 0.0 && g.h <= 0.5))
    throw std::invalid_argument("Gonska-Kovacheva step h must lie in (0, 1/2]");
}

double gk_omega2_coefficient(const GonskaKovachevaParams& g) {
  return 0.75 * (g.alpha + g.beta0 + 2.0 * g.beta1 / g.h + 2.0 * g.beta2 / (g.h * g.h));
}

}  // namespace

double gk_bound(const FunctionData& f, const GonskaKovachevaParams& g) {
  require_gk(g);
  const auto& mod = f.moduli();
  return g.gamma * (g.beta0 * f.sup_norm() + 2.0 * g.beta1 / g.h * mod.omega1(g.h) +
                    gk_omega2_coefficient(g) * mod.omega2(g.h));
}

double paltanea_general_bound(const FunctionData& f, const OperatorParams& p, double x,
                              double h) {
  if (!(h > 0.0)) throw std::invalid_argument("Paltanea step h must be positive");
  return (1.0 + second_moment(p, x) / (2.0 * h * h)) * f.moduli().omega2(h);
}

BoundReport check_paltanea(const FunctionData& f, const OperatorParams& p, double x,
                           std::optional<double> h) {
  BoundReport r;
  r.id = InequalityId::P3_2;
  r.params = p;
  r.function_labels = {f.label()};
  r.x = x;
  const double moment = second_moment(p, x);
  r.lhs = std::abs(composite_eval(f.function(), p, x) - f.function()(x));
  const double slack = f.moduli().grid_slack();
  if (h) {
    r.rhs = paltanea_general_bound(f, p, x, *h);
    r.note = "h-form";
    return finish(r, (1.0 + moment / (2.0 * *h * *h)) * slack);
  }
  r.rhs = 1.5 * f.moduli().omega2(std::sqrt(moment));
  return finish(r, 1.5 * slack);
}

BoundReport check_iterate(const FunctionData& f, const OperatorParams& p, std::uint32_t r_,
                          double x) {
  if (r_ < 1) throw std::invalid_argument("check_iterate: r must be >= 1");
  BoundReport r;
  r.id = InequalityId::P4_3_Pointwise;
  r.params = p;
  r.r = r_;
  r.function_labels = {f.label()};
  r.x = x;
  const IterateEvaluator iterate(f.function(), p, r_);
  r.lhs = std::abs(iterate(x) - piecewise_linear_interp(f.function(), p.m(), x));
  const int k = p.piece_of(x);
  const double spread =
      std::max(0.0, (x - p.piece_left(k)) * (p.piece_right(k) - x)) *
      std::pow(1.0 - 1.0 / p.n(), static_cast<double>(r_));
  r.rhs = 2.25 * f.moduli().omega2(std::sqrt(spread));
  return finish(r, 2.25 * f.moduli().grid_slack());
}

BoundReport check_iterate_uniform(const FunctionData& f, const OperatorParams& p,
                                  std::uint32_t r_) {
  if (r_ < 1) throw std::invalid_argument("check_iterate: r must be >= 1");
  BoundReport r;
  r.id = InequalityId::P4_3_Uniform;
  r.params = p;
  r.r = r_;
  r.function_labels = {f.label()};
  const IterateEvaluator iterate(f.function(), p, r_);
  const int samples = f.config().uniform_samples;
  for (int i = 0; i < samples; ++i) {
    const double x = static_cast<double>(i) / (samples - 1);
    r.lhs = std::max(r.lhs, std::abs(iterate(x) - piecewise_linear_interp(f.function(), p.m(), x)));
  }
  const double delta =
      std::pow(1.0 - 1.0 / p.n(), 0.5 * static_cast<double>(r_)) / (2.0 * p.m());
  r.rhs = 2.25 * f.moduli().omega2(delta);
  return finish(r, 2.25 * f.moduli().grid_slack());
}

BoundReport check_gruss_operator(const FunctionData& f, const FunctionData& g,
                                 const OperatorParams& p, double x) {
  BoundReport r;
  r.id = InequalityId::P5_2;
  r.params = p;
  r.function_labels = {f.label(), g.label()};
  r.x = x;
  const double fx = composite_eval(f.function(), p, x);
  const double gx = composite_eval(g.function(), p, x);
  const double fgx = composite_eval(product(f.function(), g.function()), p, x);
  r.lhs = std::abs(fgx - fx * gx);
  const double t = 2.0 * std::sqrt(second_moment(p, x));
  const double wf = f.moduli().omega_tilde(t);
  const double wg = g.moduli().omega_tilde(t);
  r.rhs = 0.25 * wf * wg;
  return finish(r, product_slack(wf, f.moduli().grid_slack(), wg, g.moduli().grid_slack()));
}

BoundReport check_quadrature_c2(const FunctionData& g, const OperatorParams& p) {
  if (!g.function().has_second_derivative())
    throw std::invalid_argument("check_quadrature_c2: '" + g.label() +
                                "' has no second derivative");
  BoundReport r;
  r.id = InequalityId::T6_2;
  r.params = p;
  r.function_labels = {g.label()};
  r.lhs = quadrature_error(g, p);
  r.rhs = c2_error_bound(p, g.function());
  return finish(r, g.config().integral_tol);
}

BoundReport check_quadrature_kfunc(const FunctionData& f, const OperatorParams& p) {
  BoundReport r;
  r.id = InequalityId::T6_3i;
  r.params = p;
  r.function_labels = {f.label()};
  r.lhs = quadrature_error(f, p);
  const double m2n = static_cast<double>(p.m()) * p.m() * p.n();
  const auto k = f.k_functional().at(1.0 / (24.0 * m2n));
  r.rhs = 2.0 * k.value_upper;
  r.upper_estimate = true;
  r.note = "K witness " + k.witness_label;
  return finish(r, f.config().integral_tol);
}

BoundReport check_quadrature_omega2(const FunctionData& f, const OperatorParams& p) {
  BoundReport r;
  r.id = InequalityId::T6_3ii;
  r.params = p;
  r.function_labels = {f.label()};
  r.lhs = quadrature_error(f, p);
  r.rhs = 2.25 * f.moduli().omega2(1.0 / (p.m() * std::sqrt(6.0 * p.n())));
  return finish(r, 2.25 * f.moduli().grid_slack() + f.config().integral_tol);
}

BoundReport check_gk_general(const FunctionData& f, const GonskaKovachevaParams& gkp,
                             const OperatorParams& p) {
  require_gk(gkp);
  BoundReport r;
  r.id = InequalityId::T6_4_Specialized;
  r.params = p;
  r.function_labels = {f.label()};
  r.lhs = quadrature_error(f, p);
  r.rhs = gk_bound(f, gkp);
  const double s = f.moduli().grid_slack();
  const double slack = gkp.gamma * (2.0 * gkp.beta1 / gkp.h + gk_omega2_coefficient(gkp)) * s;
  return finish(r, slack + f.config().integral_tol);
}

BoundReport check_gruss_quadrature(const FunctionData& f, const FunctionData& g,
                                   const OperatorParams& p) {
  BoundReport r;
  r.id = InequalityId::P7_2;
  r.params = p;
  r.function_labels = {f.label(), g.label()};
  const auto rule = build_rule(p);
  const double If = apply_rule(rule, f.function());
  const double Ig = apply_rule(rule, g.function());
  r.lhs = std::abs(apply_rule(rule, product(f.function(), g.function())) - If * Ig);
  const double t = 2.0 * std::sqrt(variance(p).value);
  const double wf = f.moduli().omega_tilde(t);
  const double wg = g.moduli().omega_tilde(t);
  r.rhs = 0.25 * wf * wg;
  return finish(r, product_slack(wf, f.moduli().grid_slack(), wg, g.moduli().grid_slack()));
}

BoundReport check_integral_limit(const FunctionData& f, const FunctionData& g) {
  const double lf = sup_first_derivative(f.function());
  const double lg = sup_first_derivative(g.function());
  BoundReport r;
  r.id = InequalityId::C7_Limit;
  r.function_labels = {f.label(), g.label()};
  const double tol = f.config().integral_tol;
  const double fg = reference_integral(product(f.function(), g.function()), tol);
  r.lhs = std::abs(fg - f.integral() * g.integral());
  const double t = 1.0 / std::sqrt(3.0);
  const double wf = f.moduli().omega_tilde(t);
  const double wg = g.moduli().omega_tilde(t);
  r.rhs = 0.25 * wf * wg;
  r.rhs_aux = lf * lg / 12.0;
  const double slack = product_slack(wf, f.moduli().grid_slack(), wg, g.moduli().grid_slack());
  r = finish(r, slack + 3.0 * tol);
  // The chain rhs <= rhs_aux must hold as well; report the worse outcome.
  const double chain_margin = *r.rhs_aux - r.rhs;
  const Status chain = classify(chain_margin, rounding(r.rhs, *r.rhs_aux));
  if (chain > r.status) {
    r.status = chain;
    r.note = "omega-tilde bound exceeds derivative bound";
  }
  return r;
}

}  // namespace cbern

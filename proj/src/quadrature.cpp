#include "cbern/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace cbern {

QuadratureRule build_rule(const OperatorParams& p) {
  const NodeGrid grid(p);
  QuadratureRule rule{p, std::vector<double>(grid.nodes().begin(), grid.nodes().end()), {}};
  const double w = 1.0 / (static_cast<double>(p.m()) * (p.n() + 1));
  rule.weights.assign(rule.nodes.size(), w);
  for (int k = 1; k < p.m(); ++k) rule.weights[static_cast<std::size_t>(k * p.n())] = 2.0 * w;
  return rule;
}

double apply_rule(const QuadratureRule& rule, const RealFunction& f) {
  double acc = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) acc += rule.weights[j] * f(rule.nodes[j]);
  return acc;
}

double apply_rule_double_sum(const OperatorParams& p, const RealFunction& f) {
  const int n = p.n();
  const int m = p.m();
  const double mn = static_cast<double>(m) * n;
  double acc = 0.0;
  for (int k = 1; k <= m; ++k)
    for (int i = 0; i <= n; ++i) acc += f((k * n - n + i) / mn);
  return acc / (static_cast<double>(m) * (n + 1));
}

VarianceValue variance(const OperatorParams& p) {
  const double m = p.m();
  return {p, 1.0 / 12.0 + 1.0 / (6.0 * m * m * p.n())};
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod abscissae kXgk[1], [3], [5], [7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double abs_value;
  int depth;

  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const Scalar& f, double a, double b, int depth) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  double abs_k = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_k += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h), abs_k * std::abs(h), depth};
}

}  // namespace

double reference_integral(const Scalar& f, double a, double b, double abs_tol) {
  if (!(abs_tol >= 1e-14)) throw std::invalid_argument("reference_integral: abs_tol < 1e-14");
  if (!(a < b)) throw std::invalid_argument("reference_integral: requires a < b");

  constexpr std::size_t kMaxSegments = 1u << 18;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const auto at_roundoff = [&](const Segment& s) { return s.error <= 50.0 * eps * s.abs_value; };

  std::priority_queue<Segment> active;
  double settled = 0.0;
  double error = 0.0;
  const auto push = [&](const Segment& s) {
    if (!at_roundoff(s)) error += s.error;
    active.push(s);
  };
  push(gauss_kronrod(f, a, b, 0));
  std::size_t segments = 1;
  while (!active.empty() && error > abs_tol) {
    const Segment worst = active.top();
    active.pop();
    if (at_roundoff(worst)) {
      settled += worst.value;
      continue;
    }
    error -= worst.error;
    if (worst.depth >= kMaxBisectionDepth || ++segments > kMaxSegments)
      throw ConvergenceError("reference_integral: bisection limit reached near [" +
                             std::to_string(worst.a) + ", " + std::to_string(worst.b) + "]");
    const double mid = 0.5 * (worst.a + worst.b);
    push(gauss_kronrod(f, worst.a, mid, worst.depth + 1));
    push(gauss_kronrod(f, mid, worst.b, worst.depth + 1));
  }
  // Sum smallest contributions first.
  std::vector<double> parts{settled};
  for (; !active.empty(); active.pop()) parts.push_back(active.top().value);
  std::sort(parts.begin(), parts.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
  double value = 0.0;
  for (double v : parts) value += v;
  return value;
}

double reference_integral(const RealFunction& f, double abs_tol) {
  return reference_integral(f.eval, 0.0, 1.0, abs_tol);
}

double sup_second_derivative(const RealFunction& g, int samples) {
  if (!g.second_derivative)
    throw std::invalid_argument("function '" + g.label + "' has no second derivative");
  double s = 0.0;
  for (int i = 0; i < samples; ++i)
    s = std::max(s, std::abs((*g.second_derivative)(static_cast<double>(i) / (samples - 1))));
  return s;
}

double c2_error_bound(const OperatorParams& p, const RealFunction& g) {
  const double m = p.m();
  return sup_second_derivative(g) / (12.0 * m * m * p.n());
}

}  // namespace cbern

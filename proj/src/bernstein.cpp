#include "cbern/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cbern {

namespace {

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error(std::string(what) + ": x = " + std::to_string(x) +
                            " outside [0,1]");
}

void require_degree(int n) {
  if (n < 1 || n > kMaxDegree)
    throw std::invalid_argument("Bernstein degree must be in [1, 64], got " +
                                std::to_string(n));
}

}  // namespace

OperatorParams::OperatorParams(int n, int m) : n_(n), m_(m) {
  require_degree(n);
  if (m < 1) throw std::invalid_argument("piece count m must be >= 1");
}

int OperatorParams::piece_of(double x) const {
  require_unit(x, "piece_of");
  const int k = static_cast<int>(std::ceil(x * m_));
  return std::clamp(k, 1, m_);
}

Interval::Interval(double a_, double b_) : a(a_), b(b_) {
  if (!(a < b)) throw std::invalid_argument("interval requires a < b");
}

double affine_pullback(const Interval& iv, double x) {
  if (!iv.contains(x)) throw std::domain_error("affine_pullback: x outside [a,b]");
  return std::clamp((x - iv.a) / (iv.b - iv.a), 0.0, 1.0);
}

double affine_pushforward(const Interval& iv, double y) {
  return iv.a + (iv.b - iv.a) * y;
}

std::vector<double> bernstein_basis(int n, double y) {
  // Row r of the triangle holds b_{i,r}(y); b_{i,r} = (1-y) b_{i,r-1} + y b_{i-1,r-1}.
  std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
  b[0] = 1.0;
  const double u = 1.0 - y;
  for (int r = 1; r <= n; ++r) {
    for (int i = r; i >= 1; --i) b[i] = u * b[i] + y * b[i - 1];
    b[0] *= u;
  }
  return b;
}

double de_casteljau(std::span<const double> coeffs, double y) {
  std::vector<double> c(coeffs.begin(), coeffs.end());
  const double u = 1.0 - y;
  for (std::size_t r = c.size(); r > 1; --r)
    for (std::size_t i = 0; i + 1 < r; ++i) c[i] = u * c[i] + y * c[i + 1];
  return c.front();
}

double bernstein_eval(const RealFunction& f, int n, const Interval& iv, double x) {
  require_degree(n);
  if (!iv.contains(x)) throw std::domain_error("bernstein_eval: x outside [a,b]");
  const double y = affine_pullback(iv, x);
  std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    coeffs[i] = f(affine_pushforward(iv, static_cast<double>(i) / n));
  return de_casteljau(coeffs, y);
}

NodeGrid::NodeGrid(OperatorParams p) : params_(p) {
  const int count = p.node_count();
  const int mn = count - 1;
  nodes_.resize(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) nodes_[j] = static_cast<double>(j) / mn;
}

std::vector<double> NodeGrid::sample(const RealFunction& f) const {
  std::vector<double> v(nodes_.size());
  std::transform(nodes_.begin(), nodes_.end(), v.begin(), [&](double t) { return f(t); });
  return v;
}

double composite_eval_nodes(std::span<const double> node_values,
                            const OperatorParams& p, double x) {
  require_unit(x, "composite_eval");
  if (node_values.size() != static_cast<std::size_t>(p.node_count()))
    throw std::invalid_argument("composite_eval_nodes: wrong node count");
  const int k = p.piece_of(x);
  const int n = p.n();
  const double a = p.piece_left(k);
  const double y = std::clamp((x - a) * p.m(), 0.0, 1.0);
  return de_casteljau(node_values.subspan(static_cast<std::size_t>((k - 1) * n),
                                          static_cast<std::size_t>(n) + 1),
                      y);
}

double composite_eval(const RealFunction& f, const OperatorParams& p, double x) {
  require_unit(x, "composite_eval");
  const int k = p.piece_of(x);
  const int n = p.n();
  const double mn = static_cast<double>(p.m()) * n;
  std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) coeffs[i] = f(((k - 1) * n + i) / mn);
  const double y = std::clamp((x - p.piece_left(k)) * p.m(), 0.0, 1.0);
  return de_casteljau(coeffs, y);
}

double second_moment(const OperatorParams& p, double x) {
  require_unit(x, "second_moment");
  const int k = p.piece_of(x);
  const double left = x - p.piece_left(k);
  const double right = p.piece_right(k) - x;
  return std::max(0.0, left * right / p.n());
}

double piecewise_linear_interp(const RealFunction& f, int m, double x) {
  require_unit(x, "piecewise_linear_interp");
  if (m < 1) throw std::invalid_argument("piece count m must be >= 1");
  const int k = std::clamp(static_cast<int>(std::ceil(x * m)), 1, m);
  const double a = static_cast<double>(k - 1) / m;
  const double b = static_cast<double>(k) / m;
  const double y = std::clamp((x - a) * m, 0.0, 1.0);
  return (1.0 - y) * f(a) + y * f(b);
}

}  // namespace cbern

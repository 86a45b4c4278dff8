#pragma once

#include <span>
#include <vector>

#include "cbern/function.hpp"

namespace cbern {

/// Largest supported Bernstein degree; C(64,k) is exact in a double.
inline constexpr int kMaxDegree = 64;

/// (n, m): degree per piece and number of uniform pieces of [0,1].
class OperatorParams {
 public:
  OperatorParams(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  int node_count() const { return m_ * n_ + 1; }

  /// Piece index k in 1..m owning x. Pieces are ((k-1)/m, k/m], so the
  /// partition point k/m belongs to piece k and x = 0 to piece 1.
  int piece_of(double x) const;
  double piece_left(int k) const { return static_cast<double>(k - 1) / m_; }
  double piece_right(int k) const { return static_cast<double>(k) / m_; }

  friend bool operator==(const OperatorParams&, const OperatorParams&) = default;
  friend auto operator<=>(const OperatorParams&, const OperatorParams&) = default;

 private:
  int n_;
  int m_;
};

struct Interval {
  double a;
  double b;

  Interval(double a, double b);
  double length() const { return b - a; }
  bool contains(double x) const { return x >= a && x <= b; }
};

/// Maps x in [a,b] to (x-a)/(b-a) in [0,1].
double affine_pullback(const Interval& iv, double x);
/// Inverse of affine_pullback: y in [0,1] to a + (b-a) y.
double affine_pushforward(const Interval& iv, double y);

/// Values b_{i,n}(y) = C(n,i) y^i (1-y)^(n-i), i = 0..n, built by the
/// de Casteljau recurrence (no powers, no explicit binomials).
std::vector<double> bernstein_basis(int n, double y);

/// Evaluates sum_i c_i b_{i,n}(y) by de Casteljau; n = coeffs.size() - 1.
double de_casteljau(std::span<const double> coeffs, double y);

/// B_n^{[a,b]}(f; x).
double bernstein_eval(const RealFunction& f, int n, const Interval& iv, double x);

/// The mn+1 global nodes j/(mn), with piece-local node i of piece k at
/// global index (k-1)n + i.
class NodeGrid {
 public:
  explicit NodeGrid(OperatorParams p);

  const OperatorParams& params() const { return params_; }
  std::span<const double> nodes() const { return nodes_; }
  double operator[](int j) const { return nodes_[static_cast<std::size_t>(j)]; }
  int global_index(int k, int i) const { return (k - 1) * params_.n() + i; }

  std::vector<double> sample(const RealFunction& f) const;

 private:
  OperatorParams params_;
  std::vector<double> nodes_;
};

/// B-bar_{n,m}(f; x).
double composite_eval(const RealFunction& f, const OperatorParams& p, double x);

/// Evaluates the composite operator from precomputed node values
/// (size mn+1). Every iterate of the operator goes through this.
double composite_eval_nodes(std::span<const double> node_values,
                            const OperatorParams& p, double x);

/// B-bar_{n,m}((e1 - x)^2; x) = (x - (k-1)/m)(k/m - x)/n.
double second_moment(const OperatorParams& p, double x);

/// S_{Delta_m}(f; x), chords through (j/m, f(j/m)).
double piecewise_linear_interp(const RealFunction& f, int m, double x);

}  // namespace cbern

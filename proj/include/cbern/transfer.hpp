#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cbern/bernstein.hpp"

namespace cbern {

/// Dense row-major square matrix; just enough algebra for operator powers.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  static Matrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * dim_, dim_);
  }

  Matrix operator*(const Matrix& rhs) const;
  std::vector<double> apply(std::span<const double> v) const;

  /// this^r by binary exponentiation.
  Matrix pow(std::uint32_t r) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Maximum supported iteration count.
inline constexpr std::uint32_t kMaxIterations = 2147483647u;

/// B-bar_{n,m} restricted to node values: entry (j, j') is the weight of
/// f(node j') in B-bar_{n,m}(f; node j). Row-stochastic, with unit rows at
/// piece endpoints.
class TransferMatrix {
 public:
  explicit TransferMatrix(OperatorParams p);

  const OperatorParams& params() const { return params_; }
  const Matrix& entries() const { return entries_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  std::size_t dim() const { return entries_.dim(); }

  std::vector<double> apply(std::span<const double> node_values) const {
    return entries_.apply(node_values);
  }

 private:
  OperatorParams params_;
  Matrix entries_;
};

/// The classical Bernstein operator of degree n on its own n+1 nodes i/n:
/// entry (i, i') = b_{i',n}(i/n). Every diagonal block of the transfer
/// matrix is this matrix.
Matrix local_bernstein_matrix(int n);

TransferMatrix build_transfer_matrix(const OperatorParams& p);

/// Node values of (B-bar_{n,m})^r f, for r >= 0. Pieces evolve
/// independently because partition-point values are fixed, so the power is
/// taken on the (n+1)x(n+1) diagonal block.
std::vector<double> iterate_node_values(std::span<const double> node_values,
                                        const OperatorParams& p, std::uint32_t r);

/// (B-bar_{n,m})^r (f; x). r = 0 returns f(x).
double iterate_eval(const RealFunction& f, const OperatorParams& p, std::uint32_t r,
                    double x);

/// Precomputed r-th iterate of one function, evaluable at many points.
class IterateEvaluator {
 public:
  IterateEvaluator(const RealFunction& f, const OperatorParams& p, std::uint32_t r);

  double operator()(double x) const;
  std::uint32_t iterations() const { return r_; }

 private:
  const RealFunction* f_;
  OperatorParams params_;
  std::uint32_t r_;
  std::vector<double> pre_final_;  // node values after r-1 applications
};

}  // namespace cbern

#include "cbern/transfer.hpp"

#include <stdexcept>

namespace cbern {

Matrix Matrix::identity(std::size_t dim) {
  Matrix I(dim);
  for (std::size_t i = 0; i < dim; ++i) I(i, i) = 1.0;
  return I;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix dimension mismatch");
  Matrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

std::vector<double> Matrix::apply(std::span<const double> v) const {
  if (v.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  std::vector<double> out(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

Matrix Matrix::pow(std::uint32_t r) const {
  Matrix result = identity(dim_);
  Matrix base = *this;
  while (r > 0) {
    if (r & 1u) result = result * base;
    r >>= 1;
    if (r > 0) base = base * base;
  }
  return result;
}

Matrix local_bernstein_matrix(int n) {
  const auto dim = static_cast<std::size_t>(n) + 1;
  Matrix A(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto b = bernstein_basis(n, static_cast<double>(i) / n);
    for (std::size_t j = 0; j < dim; ++j) A(i, j) = b[j];
  }
  // Endpoint rows are exact unit vectors.
  for (std::size_t j = 0; j < dim; ++j) {
    A(0, j) = j == 0 ? 1.0 : 0.0;
    A(dim - 1, j) = j + 1 == dim ? 1.0 : 0.0;
  }
  return A;
}

TransferMatrix::TransferMatrix(OperatorParams p)
    : params_(p), entries_(static_cast<std::size_t>(p.node_count())) {
  const int n = p.n();
  const Matrix local = local_bernstein_matrix(n);
  for (int k = 1; k <= p.m(); ++k) {
    const auto base = static_cast<std::size_t>((k - 1) * n);
    for (int i = 0; i <= n; ++i) {
      // Shared endpoints are written twice with identical unit rows.
      for (int j = 0; j <= n; ++j)
        entries_(base + static_cast<std::size_t>(i), base + static_cast<std::size_t>(j)) =
            local(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
}

TransferMatrix build_transfer_matrix(const OperatorParams& p) { return TransferMatrix(p); }

std::vector<double> iterate_node_values(std::span<const double> node_values,
                                        const OperatorParams& p, std::uint32_t r) {
  if (node_values.size() != static_cast<std::size_t>(p.node_count()))
    throw std::invalid_argument("iterate_node_values: wrong node count");
  if (r > kMaxIterations) throw std::invalid_argument("iteration count above 2^31-1");
  std::vector<double> v(node_values.begin(), node_values.end());
  if (r == 0) return v;

  const int n = p.n();
  const auto dim = static_cast<std::size_t>(n) + 1;
  const Matrix local = local_bernstein_matrix(n);
  const bool squaring = r > 8;
  const Matrix power = squaring ? local.pow(r) : Matrix{};

  std::vector<double> piece(dim);
  for (int k = 1; k <= p.m(); ++k) {
    const auto base = static_cast<std::size_t>((k - 1) * n);
    for (std::size_t i = 0; i < dim; ++i) piece[i] = node_values[base + i];
    if (squaring) {
      piece = power.apply(piece);
    } else {
      for (std::uint32_t s = 0; s < r; ++s) piece = local.apply(piece);
    }
    for (std::size_t i = 0; i < dim; ++i) v[base + i] = piece[i];
  }
  return v;
}

IterateEvaluator::IterateEvaluator(const RealFunction& f, const OperatorParams& p,
                                   std::uint32_t r)
    : f_(&f), params_(p), r_(r) {
  if (r_ >= 1) pre_final_ = iterate_node_values(NodeGrid(p).sample(f), p, r_ - 1);
}

double IterateEvaluator::operator()(double x) const {
  if (r_ == 0) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("iterate_eval: x outside [0,1]");
    return (*f_)(x);
  }
  return composite_eval_nodes(pre_final_, params_, x);
}

double iterate_eval(const RealFunction& f, const OperatorParams& p, std::uint32_t r,
                    double x) {
  return IterateEvaluator(f, p, r)(x);
}

}  // namespace cbern

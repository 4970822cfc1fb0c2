#include "hankel_lab/hankel.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>

#include "hankel_lab/kernels.hpp"

namespace hankel_lab {

namespace {

using Index = Eigen::Index;

double inverse_two_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Schatten exponent must satisfy p >= 1");
  return std::isinf(p) ? 0.0 : 1.0 / (2.0 * p);
}

// Block (j,k) = row_weight(j) * col_weight(k) * f^(j+k).
template <typename RowW, typename ColW>
BlockMatrix weighted_hankel(const FormalSeries& f, std::size_t m, RowW row_weight, ColW col_weight) {
  if (m == 0) throw std::invalid_argument("Hankel window size m must be >= 1");
  const std::size_t d = f.block_dim();
  BlockMatrix out(m, d);
  std::vector<double> rw(m), cw(m);
  for (std::size_t j = 0; j < m; ++j) {
    rw[j] = row_weight(j);
    cw[j] = col_weight(j);
  }
  for (std::size_t i = 0; i < f.stored_terms(); ++i) {
    const std::size_t n = f.stored_degree(i);
    if (n > 2 * m - 2) break;
    const auto b = f.stored_block(i);
    if (b.isZero(0.0)) continue;
    const std::size_t j_lo = n >= m ? n - m + 1 : 0;
    const std::size_t j_hi = std::min(n, m - 1);
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      const std::size_t k = n - j;
      out.block(j, k) = (rw[j] * cw[k]) * b;
    }
  }
  return out;
}

double norm2(std::span<const cplx> v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

}  // namespace

BlockMatrix::BlockMatrix(std::size_t m, std::size_t d) : m_(m), d_(d) {
  if (m == 0 || d == 0) throw std::invalid_argument("BlockMatrix: m and d must be >= 1");
  const auto n = static_cast<Index>(m * d);
  a_ = Eigen::MatrixXcd::Zero(n, n);
}

BlockMatrix::BlockMatrix(Eigen::MatrixXcd dense, std::size_t d) : d_(d), a_(std::move(dense)) {
  if (d == 0 || a_.rows() != a_.cols() || a_.rows() == 0 ||
      static_cast<std::size_t>(a_.rows()) % d != 0) {
    throw std::invalid_argument("BlockMatrix: dense matrix must be square with size divisible by d");
  }
  m_ = static_cast<std::size_t>(a_.rows()) / d;
}

BlockMatrix BlockMatrix::unit(std::size_t m, std::size_t j, std::size_t k) {
  BlockMatrix e(m, 1);
  e.dense()(static_cast<Index>(j), static_cast<Index>(k)) = 1.0;
  return e;
}

BlockMatrix hankel_matrix(const FormalSeries& f, double alpha, double beta, std::size_t m) {
  return weighted_hankel(
      f, m, [alpha](std::size_t j) { return std::pow(1.0 + static_cast<double>(j), alpha); },
      [beta](std::size_t k) { return std::pow(1.0 + static_cast<double>(k), beta); });
}

Eigen::VectorXd singular_values(const BlockMatrix& a) {
  const std::size_t n = a.m() * a.d();
  if (n > kMaxDenseSvd) {
    throw std::length_error("dense SVD refused for size " + std::to_string(n) + " > " +
                            std::to_string(kMaxDenseSvd) + "; use operator_norm_power for p = inf");
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a.dense());
  return svd.singularValues();
}

double schatten_norm(const BlockMatrix& a, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("schatten_norm: need p >= 1");
  const Eigen::VectorXd sv = singular_values(a);
  return kernels::lp_combine({sv.data(), static_cast<std::size_t>(sv.size())}, p);
}

std::vector<cplx> hankel_matvec_fft(std::span<const cplx> c, std::span<const cplx> x) {
  std::vector<cplx> y(x.size());
  if (x.empty()) return y;
  kernels::HankelFft(c, x.size()).apply(x, y);
  return y;
}

std::vector<cplx> hankel_coefficients(const FormalSeries& f, std::size_t m) {
  if (f.block_dim() != 1) throw std::invalid_argument("hankel_coefficients: scalar series only");
  if (m == 0) throw std::invalid_argument("hankel_coefficients: m must be >= 1");
  std::vector<cplx> c(2 * m - 1, cplx{});
  for (std::size_t i = 0; i < f.stored_terms(); ++i) {
    const std::size_t n = f.stored_degree(i);
    if (n >= c.size()) break;
    c[n] = f.stored_block(i)(0, 0);
  }
  return c;
}

LinearOperator dense_operator(const BlockMatrix& a) {
  auto mat = std::make_shared<const Eigen::MatrixXcd>(a.dense());
  LinearOperator op;
  op.dim = static_cast<std::size_t>(mat->rows());
  op.apply = [mat](std::span<const cplx> x, std::span<cplx> y) {
    Eigen::Map<const Eigen::VectorXcd> xv(x.data(), static_cast<Index>(x.size()));
    Eigen::Map<Eigen::VectorXcd> yv(y.data(), static_cast<Index>(y.size()));
    yv.noalias() = (*mat) * xv;
  };
  op.apply_adjoint = [mat](std::span<const cplx> x, std::span<cplx> y) {
    Eigen::Map<const Eigen::VectorXcd> xv(x.data(), static_cast<Index>(x.size()));
    Eigen::Map<Eigen::VectorXcd> yv(y.data(), static_cast<Index>(y.size()));
    yv.noalias() = mat->adjoint() * xv;
  };
  return op;
}

LinearOperator hankel_fft_operator(std::span<const cplx> c, std::size_t m) {
  auto plan = std::make_shared<const kernels::HankelFft>(c, m);
  LinearOperator op;
  op.dim = m;
  op.apply = [plan](std::span<const cplx> x, std::span<cplx> y) { plan->apply(x, y); };
  // A Hankel matrix is symmetric, so A* x = conj(A conj(x)).
  op.apply_adjoint = [plan](std::span<const cplx> x, std::span<cplx> y) {
    std::vector<cplx> xc(x.begin(), x.end());
    for (auto& v : xc) v = std::conj(v);
    plan->apply(xc, y);
    for (auto& v : y) v = std::conj(v);
  };
  return op;
}

PowerIterationResult operator_norm_power(const LinearOperator& op, int iters, double tol,
                                         std::uint64_t seed) {
  PowerIterationResult result;
  const std::size_t n = op.dim;
  if (n == 0) {
    result.converged = true;
    return result;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<cplx> x(n), y(n), z(n);
  for (auto& v : x) v = {normal(rng), normal(rng)};
  const double nx = norm2(x);
  for (auto& v : x) v /= nx;

  double previous = -1.0;
  for (int it = 1; it <= iters; ++it) {
    op.apply(x, y);
    const double estimate = norm2(y);
    result.iterations = it;
    result.estimate = std::max(result.estimate, estimate);
    if (estimate == 0.0 ||
        (previous >= 0.0 && std::abs(estimate - previous) < tol * std::max(1.0, estimate))) {
      result.converged = true;
      break;
    }
    previous = estimate;
    op.apply_adjoint(y, z);
    const double nz = norm2(z);
    if (nz == 0.0) {
      result.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / nz;
  }
  return result;
}

namespace {

// Block antidiagonal sums S_n = sum_{s+t=n} A_{s,t}, n = 0..2m-2.
std::vector<Block> antidiagonal_sums(const BlockMatrix& a) {
  const std::size_t m = a.m();
  const auto d = static_cast<Index>(a.d());
  std::vector<Block> sums(2 * m - 1, Block::Zero(d, d));
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) sums[s + t] += a.block(s, t);
  }
  return sums;
}

}  // namespace

BlockMatrix p_hank_padded(const BlockMatrix& a) {
  const std::size_t m = a.m();
  const auto sums = antidiagonal_sums(a);
  const std::size_t size = 2 * m - 1;
  BlockMatrix out(size, a.d());
  for (std::size_t j = 0; j < size; ++j) {
    for (std::size_t k = 0; j + k < sums.size(); ++k) {
      out.block(j, k) = sums[j + k] / static_cast<double>(j + k + 1);
    }
  }
  return out;
}

BlockMatrix p_hank_padded_adjoint(const BlockMatrix& g, std::size_t m) {
  if (g.m() != 2 * m - 1) {
    throw std::invalid_argument("p_hank_padded_adjoint: input must be (2m-1) x (2m-1) blocks");
  }
  const auto sums = antidiagonal_sums(g);
  BlockMatrix out(m, g.d());
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      out.block(s, t) = sums[s + t] / static_cast<double>(s + t + 1);
    }
  }
  return out;
}

BlockMatrix p_hank_windowed(const BlockMatrix& a) {
  const std::size_t m = a.m();
  const auto sums = antidiagonal_sums(a);
  BlockMatrix out(m, a.d());
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t n = j + k;
      const std::size_t cells = std::min(n, 2 * m - 2 - n) + 1;
      out.block(j, k) = sums[n] / static_cast<double>(cells);
    }
  }
  return out;
}

BlockMatrix d_power(std::size_t m, double t, std::size_t d) {
  BlockMatrix out(m, d);
  for (std::size_t j = 0; j < m; ++j) {
    out.block(j, j).setIdentity();
    out.block(j, j) *= std::pow(1.0 + static_cast<double>(j), -t);
  }
  return out;
}

BlockMatrix tp_matrix(const FormalSeries& f, double alpha, double beta, double p, std::size_t m) {
  const double h = inverse_two_p(p);
  BlockMatrix out = weighted_hankel(
      f, m, [&](std::size_t j) { return std::pow(1.0 + static_cast<double>(j), alpha - h); },
      [&](std::size_t k) { return std::pow(1.0 + static_cast<double>(k), beta - h); });
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      out.block(j, k) /= std::pow(1.0 + static_cast<double>(j + k), alpha + beta);
    }
  }
  return out;
}

BlockMatrix gamma_tilde_11(const FormalSeries& g, double alpha, double beta, std::size_t m) {
  return weighted_hankel(
      g, m,
      [alpha](std::size_t j) {
        return dn(j, alpha + 1.0) / std::pow(1.0 + static_cast<double>(j), alpha);
      },
      [beta](std::size_t k) {
        return dn(k, beta + 1.0) / std::pow(1.0 + static_cast<double>(k), beta);
      });
}

cplx trace_pairing(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.dense().rows() != b.dense().rows() || a.d() != b.d()) {
    throw std::invalid_argument("trace_pairing: size mismatch");
  }
  return (a.dense().array() * b.dense().array()).sum();
}

}  // namespace hankel_lab

#pragma once

// Matrix-side constructions: generalized (block) Hankel matrices, the
// diagonal weights D^t, T_p, the two Hankel projections, Schatten norms and
// matrix-free operator-norm estimation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hankel_lab/series.hpp"

namespace hankel_lab {

// Largest m*d for which dense SVDs (and therefore finite-p Schatten norms)
// are computed.
inline constexpr std::size_t kMaxDenseSvd = 4096;

// Square (m*d) x (m*d) complex matrix viewed as m x m blocks of size d x d.
class BlockMatrix {
 public:
  BlockMatrix(std::size_t m, std::size_t d);
  BlockMatrix(Eigen::MatrixXcd dense, std::size_t d);

  std::size_t m() const { return m_; }
  std::size_t d() const { return d_; }
  const Eigen::MatrixXcd& dense() const { return a_; }
  Eigen::MatrixXcd& dense() { return a_; }

  auto block(std::size_t j, std::size_t k) {
    const auto d = static_cast<Eigen::Index>(d_);
    return a_.block(static_cast<Eigen::Index>(j) * d, static_cast<Eigen::Index>(k) * d, d, d);
  }
  auto block(std::size_t j, std::size_t k) const {
    const auto d = static_cast<Eigen::Index>(d_);
    return a_.block(static_cast<Eigen::Index>(j) * d, static_cast<Eigen::Index>(k) * d, d, d);
  }

  // Matrix unit E_{jk} (scalar blocks).
  static BlockMatrix unit(std::size_t m, std::size_t j, std::size_t k);

 private:
  std::size_t m_;
  std::size_t d_;
  Eigen::MatrixXcd a_;
};

// Block (j,k) = (1+j)^alpha (1+k)^beta f^(j+k), 0 <= j,k < m.
BlockMatrix hankel_matrix(const FormalSeries& f, double alpha, double beta, std::size_t m);

// Descending singular values. Refuses m*d > kMaxDenseSvd.
Eigen::VectorXd singular_values(const BlockMatrix& a);
// (sum sigma_i^p)^{1/p}; p = inf gives sigma_1.
double schatten_norm(const BlockMatrix& a, double p);

// y_j = sum_k c_{j+k} x_k through the FFT correlation kernel.
std::vector<cplx> hankel_matvec_fft(std::span<const cplx> c, std::span<const cplx> x);
// Scalar symbol coefficients c_0 .. c_{2m-2}.
std::vector<cplx> hankel_coefficients(const FormalSeries& f, std::size_t m);

// Square matrix-free operator with its adjoint.
struct LinearOperator {
  std::size_t dim = 0;
  std::function<void(std::span<const cplx>, std::span<cplx>)> apply;
  std::function<void(std::span<const cplx>, std::span<cplx>)> apply_adjoint;
};

LinearOperator dense_operator(const BlockMatrix& a);
// Scalar Hankel operator (c_{j+k})_{0<=j,k<m}, applied through the FFT.
LinearOperator hankel_fft_operator(std::span<const cplx> c, std::size_t m);

struct PowerIterationResult {
  double estimate = 0.0;  // best ||A x|| over unit iterates x: a lower bound on sigma_1
  int iterations = 0;
  bool converged = false;
};

// Power iteration on A*A from a seeded complex Gaussian start.
PowerIterationResult operator_norm_power(const LinearOperator& op, int iters, double tol,
                                         std::uint64_t seed);

// Zero-pads an m x m input to an infinite matrix, averages each antidiagonal
// with divisor j+k+1, and returns the (2m-1) x (2m-1) window holding every
// nonzero antidiagonal.
BlockMatrix p_hank_padded(const BlockMatrix& a);
// Adjoint of p_hank_padded for the Frobenius pairing: a (2m-1) x (2m-1) input
// averaged with divisor j+k+1 and restricted to the m x m window.
BlockMatrix p_hank_padded_adjoint(const BlockMatrix& g, std::size_t m);
// Frobenius-orthogonal projection onto m x m Hankel matrices (divisor = number
// of in-window cells on the antidiagonal).
BlockMatrix p_hank_windowed(const BlockMatrix& a);

// diag((1+j)^{-t}) (x) I_d.
BlockMatrix d_power(std::size_t m, double t, std::size_t d = 1);

// Entry (j,k) = (1+j)^{alpha-1/2p} (1+k)^{beta-1/2p} f^(j+k) / (1+j+k)^{alpha+beta}.
BlockMatrix tp_matrix(const FormalSeries& f, double alpha, double beta, double p, std::size_t m);

// Entry (j,k) = D_j^{alpha+1}/(1+j)^alpha * D_k^{beta+1}/(1+k)^beta * g^(j+k).
BlockMatrix gamma_tilde_11(const FormalSeries& g, double alpha, double beta, std::size_t m);

// sum_{j,k} sum_{u,v} A_{(j,k),uv} B_{(j,k),uv}, no conjugation.
cplx trace_pairing(const BlockMatrix& a, const BlockMatrix& b);

}  // namespace hankel_lab

#pragma once

// Formal analytic series with d x d complex block coefficients, the dyadic
// Littlewood-Paley kernels W_n / V_n, Fourier multipliers and the D_n^alpha
// calculus (I_t, I~_t).

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hankel_lab/report.hpp"

namespace hankel_lab {

using cplx = std::complex<double>;
using Block = Eigen::MatrixXcd;

// phi = sum_k phi^(k) z^k, truncated at degree N.
//
// Two storage layouts are supported. Dense stores every degree 0..N; sparse
// stores an increasing list of (degree, block) pairs, which keeps lacunary
// symbols of degree 2^n cheap. Every operation accepts both and agrees on the
// result. Blocks are stored column-major, contiguously, one per stored term.
class FormalSeries {
 public:
  enum class Storage { dense, sparse };

  // Zero scalar series.
  FormalSeries() : FormalSeries(1) {}
  // Zero series of the given block dimension (one zero block at degree 0).
  explicit FormalSeries(std::size_t block_dim);

  static FormalSeries scalar(std::vector<cplx> coeffs);
  static FormalSeries from_blocks(const std::vector<Block>& blocks);
  static FormalSeries monomial(std::size_t degree, cplx value = 1.0);
  static FormalSeries block_monomial(std::size_t degree, const Block& value);
  // Terms must have strictly increasing degrees.
  static FormalSeries sparse_scalar(const std::vector<std::pair<std::size_t, cplx>>& terms);
  static FormalSeries sparse_blocks(std::size_t block_dim,
                                    const std::vector<std::pair<std::size_t, Block>>& terms);

  std::size_t block_dim() const { return d_; }
  Storage storage() const { return storage_; }
  bool is_sparse() const { return storage_ == Storage::sparse; }
  // Largest stored degree (0 for an empty sparse series).
  std::size_t degree() const;

  // Stored terms, in increasing degree.
  std::size_t stored_terms() const;
  std::size_t stored_degree(std::size_t i) const;
  Eigen::Map<const Block> stored_block(std::size_t i) const;
  Eigen::Map<Block> stored_block(std::size_t i);

  // Coefficient of z^k (zero block outside the stored support).
  Block coeff(std::size_t k) const;
  // Coefficient of z^k for a scalar series.
  cplx scalar_coeff(std::size_t k) const;

  bool is_zero() const;
  FormalSeries to_dense() const;
  // Drops all-zero blocks.
  FormalSeries to_sparse() const;
  // Removes trailing zero blocks from a dense series.
  FormalSeries trimmed() const;

  // Formal derivative sum_k k phi^(k) z^{k-1}.
  FormalSeries derivative() const;
  // Kronecker product with the d x d identity: phi^(k) (x) I_d.
  FormalSeries tensor_identity(std::size_t d) const;

  FormalSeries& operator*=(cplx c);
  friend FormalSeries operator*(cplx c, FormalSeries f) { return f *= c; }
  friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);

  // Returns a copy where stored term i is multiplied by scale(stored_degree(i)).
  template <typename ScaleFn>
  FormalSeries scaled_by_degree(ScaleFn&& scale) const {
    FormalSeries out = *this;
    const std::size_t n = stored_terms();
    for (std::size_t i = 0; i < n; ++i) {
      const cplx c = scale(stored_degree(i));
      out.stored_block(i) *= c;
    }
    return out;
  }

  std::span<const cplx> raw() const { return data_; }

 private:
  std::size_t d_ = 1;
  Storage storage_ = Storage::dense;
  std::vector<std::size_t> degrees_;  // sparse only
  std::vector<cplx> data_;
};

// Window [first, first + values.size() - 1] of a symbol lambda: Z -> C,
// zero outside the window.
class MultiplierSymbol {
 public:
  MultiplierSymbol(std::int64_t first, std::vector<cplx> values);

  std::int64_t first() const { return first_; }
  std::int64_t last() const { return first_ + static_cast<std::int64_t>(values_.size()) - 1; }
  std::span<const cplx> values() const { return values_; }
  cplx operator()(std::int64_t k) const;

  static MultiplierSymbol constant(std::int64_t first, std::int64_t last, cplx value);
  // lambda_k = W^_n(k) on the kernel support.
  static MultiplierSymbol dyadic_kernel(unsigned n);

 private:
  std::int64_t first_;
  std::vector<cplx> values_;
};

// W_n or V_n. V_n = W_{n-1} + W_n + W_{n+1} for n >= 1 and V_0 = W_0 + W_1.
struct KernelId {
  enum class Variant { W, V };
  unsigned n = 0;
  Variant variant = Variant::W;
};

// D_n^alpha = prod_{j=1}^n (1 + alpha/j). Log-space accumulation for n > 64
// when every factor is positive.
double dn(std::size_t n, double alpha);

// Fourier coefficient of the dyadic kernel W_n at k.
double wn_hat(unsigned n, std::int64_t k);
double kernel_hat(KernelId id, std::int64_t k);
// Degrees k >= 0 where kernel_hat(id, k) may be nonzero: [lo, hi].
std::pair<std::int64_t, std::int64_t> kernel_support(KernelId id);

FormalSeries kernel_convolve(KernelId id, const FormalSeries& f);
CheckReport partition_of_unity_check(std::int64_t k_max);
FormalSeries apply_multiplier(const MultiplierSymbol& lambda, const FormalSeries& f);
// Coefficient k scaled by (1+k)^t.
FormalSeries i_t(const FormalSeries& f, double t);
// Coefficient k scaled by D_k^t.
FormalSeries i_tilde(const FormalSeries& f, double t);
// Inverse of i_tilde: coefficient k scaled by 1/D_k^t.
FormalSeries i_tilde_inverse(const FormalSeries& f, double t);
// Coefficient k scaled by r^k, i.e. f_r(z) = f(rz).
FormalSeries dilate(const FormalSeries& f, double r);

// Values of f at z_m = exp(2 pi i m / M) for m = 0..M-1.
class GridValues {
 public:
  GridValues(std::size_t points, std::size_t block_dim);
  std::size_t points() const { return points_; }
  std::size_t block_dim() const { return d_; }
  Eigen::Map<const Block> at(std::size_t m) const;
  Eigen::Map<Block> at(std::size_t m);
  std::span<const cplx> raw() const { return data_; }
  std::span<cplx> raw() { return data_; }

 private:
  std::size_t points_;
  std::size_t d_;
  std::vector<cplx> data_;
};

std::size_t next_pow2(std::size_t n);
// Smallest grid size evaluate_on_grid accepts for a series of this degree.
std::size_t min_grid_points(std::size_t degree);

// Requires M >= 2(N+1); M is rounded up to a power of two. Dense series are
// synthesized with an FFT, sparse series by direct summation.
GridValues evaluate_on_grid(const FormalSeries& f, std::size_t M);

// phi_a = sum_k a_k z^{2^k}.
FormalSeries lacunary_series(std::span<const cplx> a,
                             FormalSeries::Storage storage = FormalSeries::Storage::sparse);

}  // namespace hankel_lab

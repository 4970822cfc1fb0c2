#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a serial twin kept as the
// test reference. Parallel kernels only parallelize independent outputs
// (map), never floating-point reductions, so results are bit-identical to
// the serial twin for any thread count.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hankel_lab::kernels {

using cplx = std::complex<double>;

// y_j = sum_k c_{j+k} x_k, 0 <= j,k < m, with c of length 2m-1.
void hankel_matvec_dense_serial(std::span<const cplx> c, std::span<const cplx> x,
                                std::span<cplx> y);
void hankel_matvec_dense_parallel(std::span<const cplx> c, std::span<const cplx> x,
                                  std::span<cplx> y);

// Same product through an FFT correlation of length next_pow2(2m-1). The
// coefficient spectrum is computed once at construction.
class HankelFft {
 public:
  HankelFft(std::span<const cplx> c, std::size_t m);
  std::size_t size() const { return m_; }
  void apply(std::span<const cplx> x, std::span<cplx> y) const;

 private:
  std::size_t m_;
  std::size_t len_;
  std::vector<cplx> spectrum_;
};

// Direct trigonometric synthesis of a sparse series on M roots of unity.
// `coeffs` holds one block of `block_size` entries per degree; `out` receives
// M blocks, point-major.
void sparse_synthesis_serial(std::span<const std::size_t> degrees, std::span<const cplx> coeffs,
                             std::size_t block_size, std::size_t M, std::span<cplx> out);
void sparse_synthesis_parallel(std::span<const std::size_t> degrees, std::span<const cplx> coeffs,
                               std::size_t block_size, std::size_t M, std::span<cplx> out);

// Pointwise Schatten-p_e norm of d x d blocks stored contiguously (column-major,
// point-major). For d = 1 this is the modulus.
void block_norms_serial(std::span<const cplx> blocks, std::size_t d, double p_e,
                        std::span<double> out);
void block_norms_parallel(std::span<const cplx> blocks, std::size_t d, double p_e,
                          std::span<double> out);

// (sum_i v_i^p)^{1/p} for v_i >= 0, scaled by the maximum to avoid overflow;
// p = inf gives the maximum. Serial, fixed summation order.
double lp_combine(std::span<const double> values, double p);
// (1/n) sum_i v_i^p for finite p.
double mean_power(std::span<const double> values, double p);

}  // namespace hankel_lab::kernels

#include "hankel_lab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

namespace hankel_lab::kernels {

namespace {

void check_hankel_sizes(std::span<const cplx> c, std::span<const cplx> x, std::span<cplx> y) {
  const std::size_t m = x.size();
  if (y.size() != m || (m > 0 && c.size() != 2 * m - 1)) {
    throw std::invalid_argument("hankel matvec: expected |c| = 2m-1 and |x| = |y| = m");
  }
}

inline cplx hankel_row(std::span<const cplx> c, std::span<const cplx> x, std::size_t j) {
  cplx acc{};
  const std::size_t m = x.size();
  for (std::size_t k = 0; k < m; ++k) acc += c[j + k] * x[k];
  return acc;
}

std::vector<cplx> twiddles(std::size_t M) {
  std::vector<cplx> tw(M);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double a = step * static_cast<double>(j);
    tw[j] = {std::cos(a), std::sin(a)};
  }
  return tw;
}

inline void synthesize_point(std::span<const std::size_t> degrees, std::span<const cplx> coeffs,
                             std::size_t block_size, std::size_t M, const std::vector<cplx>& tw,
                             std::size_t m, cplx* dst) {
  std::fill(dst, dst + block_size, cplx{});
  for (std::size_t t = 0; t < degrees.size(); ++t) {
    // Exact phase index keeps large degrees accurate.
    const std::size_t phase = static_cast<std::size_t>(
        (static_cast<unsigned __int128>(degrees[t] % M) * m) % M);
    const cplx w = tw[phase];
    const cplx* src = coeffs.data() + t * block_size;
    for (std::size_t e = 0; e < block_size; ++e) dst[e] += src[e] * w;
  }
}

inline double block_norm(const cplx* data, std::size_t d, double p_e) {
  if (d == 1) return std::abs(data[0]);
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::Map<const Eigen::MatrixXcd> b(data, n, n);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(b).singularValues();
  return lp_combine({sv.data(), static_cast<std::size_t>(sv.size())}, p_e);
}

}  // namespace

void hankel_matvec_dense_serial(std::span<const cplx> c, std::span<const cplx> x,
                                std::span<cplx> y) {
  check_hankel_sizes(c, x, y);
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = hankel_row(c, x, j);
}

void hankel_matvec_dense_parallel(std::span<const cplx> c, std::span<const cplx> x,
                                  std::span<cplx> y) {
  check_hankel_sizes(c, x, y);
  const auto m = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < m; ++j) {
    y[static_cast<std::size_t>(j)] = hankel_row(c, x, static_cast<std::size_t>(j));
  }
}

HankelFft::HankelFft(std::span<const cplx> c, std::size_t m) : m_(m) {
  if (m == 0 || c.size() != 2 * m - 1) {
    throw std::invalid_argument("HankelFft: expected 2m-1 coefficients");
  }
  len_ = 2;  // kissfft does not handle length-1 transforms
  while (len_ < 2 * m - 1) len_ <<= 1;
  std::vector<cplx> padded(len_, cplx{});
  std::copy(c.begin(), c.end(), padded.begin());
  Eigen::FFT<double> fft;
  fft.fwd(spectrum_, padded);
}

void HankelFft::apply(std::span<const cplx> x, std::span<cplx> y) const {
  if (x.size() != m_ || y.size() != m_) throw std::invalid_argument("HankelFft: size mismatch");
  // y_j = (c * reverse(x))_{j+m-1}; a circular length >= 2m-1 avoids wrap-around
  // on the indices that are read back.
  std::vector<cplx> rev(len_, cplx{});
  for (std::size_t k = 0; k < m_; ++k) rev[k] = x[m_ - 1 - k];
  Eigen::FFT<double> fft;
  std::vector<cplx> spec;
  fft.fwd(spec, rev);
  for (std::size_t i = 0; i < len_; ++i) spec[i] *= spectrum_[i];
  std::vector<cplx> conv;
  fft.inv(conv, spec);
  for (std::size_t j = 0; j < m_; ++j) y[j] = conv[j + m_ - 1];
}

void sparse_synthesis_serial(std::span<const std::size_t> degrees, std::span<const cplx> coeffs,
                             std::size_t block_size, std::size_t M, std::span<cplx> out) {
  if (out.size() != M * block_size || coeffs.size() != degrees.size() * block_size) {
    throw std::invalid_argument("sparse_synthesis: size mismatch");
  }
  const auto tw = twiddles(M);
  for (std::size_t m = 0; m < M; ++m) {
    synthesize_point(degrees, coeffs, block_size, M, tw, m, out.data() + m * block_size);
  }
}

void sparse_synthesis_parallel(std::span<const std::size_t> degrees, std::span<const cplx> coeffs,
                               std::size_t block_size, std::size_t M, std::span<cplx> out) {
  if (out.size() != M * block_size || coeffs.size() != degrees.size() * block_size) {
    throw std::invalid_argument("sparse_synthesis: size mismatch");
  }
  const auto tw = twiddles(M);
  const auto points = static_cast<std::ptrdiff_t>(M);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < points; ++m) {
    const auto mu = static_cast<std::size_t>(m);
    synthesize_point(degrees, coeffs, block_size, M, tw, mu, out.data() + mu * block_size);
  }
}

void block_norms_serial(std::span<const cplx> blocks, std::size_t d, double p_e,
                        std::span<double> out) {
  const std::size_t dd = d * d;
  if (blocks.size() != out.size() * dd) throw std::invalid_argument("block_norms: size mismatch");
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = block_norm(blocks.data() + i * dd, d, p_e);
}

void block_norms_parallel(std::span<const cplx> blocks, std::size_t d, double p_e,
                          std::span<double> out) {
  const std::size_t dd = d * d;
  if (blocks.size() != out.size() * dd) throw std::invalid_argument("block_norms: size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    out[iu] = block_norm(blocks.data() + iu * dd, d, p_e);
  }
}

double lp_combine(std::span<const double> values, double p) {
  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, v);
  if (std::isinf(p) || vmax == 0.0) return vmax;
  double acc = 0.0;
  for (double v : values) acc += std::pow(v / vmax, p);
  return vmax * std::pow(acc, 1.0 / p);
}

double mean_power(std::span<const double> values, double p) {
  if (values.empty()) return 0.0;
  double acc = 0.0;
  for (double v : values) acc += std::pow(v, p);
  return acc / static_cast<double>(values.size());
}

}  // namespace hankel_lab::kernels

#pragma once

// Independent reference computations used by the tests. None of these call
// into the library's numerical code paths: they use closed forms from the
// standard library special functions, brute-force loops and long double sums.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

// D_n^alpha = Gamma(n + alpha + 1) / (Gamma(n + 1) Gamma(alpha + 1)), alpha > -1.
inline double dn(std::size_t n, double alpha) {
  const double nn = static_cast<double>(n);
  return std::exp(std::lgamma(nn + alpha + 1.0) - std::lgamma(nn + 1.0) - std::lgamma(alpha + 1.0));
}

// int_0^1 (1-r)^{2s-1} r^{2k+1} dr = B(2s, 2k+2).
inline double beta_integral(double s, std::size_t k) {
  return std::beta(2.0 * s, 2.0 * static_cast<double>(k) + 2.0);
}

// Dyadic kernel coefficient from the piecewise triangular profile.
inline double wn_hat(unsigned n, long long k) {
  if (n == 0) return (k == 0 || k == 1) ? 1.0 : 0.0;
  const double a = std::pow(2.0, n - 1.0);
  const double b = std::pow(2.0, static_cast<double>(n));
  const double c = std::pow(2.0, n + 1.0);
  const double x = static_cast<double>(k);
  if (x >= a && x <= b) return (x - a) / a;
  if (x > b && x <= c) return (c - x) / b;
  return 0.0;
}

// y_j = sum_k c_{j+k} x_k.
inline std::vector<cplx> hankel_matvec(const std::vector<cplx>& c, const std::vector<cplx>& x) {
  const std::size_t m = x.size();
  std::vector<cplx> y(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::complex<long double> acc = 0;
    for (std::size_t k = 0; k < m; ++k) {
      acc += std::complex<long double>(c[j + k]) * std::complex<long double>(x[k]);
    }
    y[j] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return y;
}

// Parseval: ||sum a_k z^k||_{L^2} = ||a||_2.
inline double parseval(const std::vector<cplx>& a) {
  long double acc = 0;
  for (const auto& x : a) acc += std::norm(std::complex<long double>(x));
  return static_cast<double>(std::sqrt(acc));
}

// Brute-force ((1/M) sum |f(z_m)|^p)^{1/p} with direct trigonometric sums.
inline double circle_lp(const std::vector<cplx>& a, double p, std::size_t M) {
  long double acc = 0;
  long double vmax = 0;
  for (std::size_t m = 0; m < M; ++m) {
    std::complex<long double> v = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const long double t = 2.0L * std::numbers::pi_v<long double> *
                            static_cast<long double>((k * m) % M) / static_cast<long double>(M);
      v += std::complex<long double>(a[k]) * std::complex<long double>(std::cos(t), std::sin(t));
    }
    const long double mod = std::abs(v);
    vmax = std::max(vmax, mod);
    if (std::isfinite(p)) acc += std::pow(mod, static_cast<long double>(p));
  }
  if (!std::isfinite(p)) return static_cast<double>(vmax);
  return static_cast<double>(std::pow(acc / static_cast<long double>(M), 1.0L / p));
}

// Schatten-p norm from the eigenvalues of A* A.
inline double schatten(const Eigen::MatrixXcd& a, double p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.adjoint() * a);
  double vmax = 0.0;
  std::vector<double> sv;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double s = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    sv.push_back(s);
    vmax = std::max(vmax, s);
  }
  if (!std::isfinite(p) || vmax == 0.0) return vmax;
  long double acc = 0;
  for (double s : sv) acc += std::pow(static_cast<long double>(s / vmax), static_cast<long double>(p));
  return vmax * static_cast<double>(std::pow(acc, 1.0L / p));
}

// Entry (j,k) = (1+j)^alpha (1+k)^beta a_{j+k}, scalar symbol.
inline Eigen::MatrixXcd hankel(const std::vector<cplx>& a, double alpha, double beta, std::size_t m) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      if (j + k < a.size()) {
        h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            std::pow(1.0 + j, alpha) * std::pow(1.0 + k, beta) * a[j + k];
      }
    }
  }
  return h;
}

// Besov norm of a lacunary series sum a_k z^{2^k} at (p, p, 1/p):
// each z^{2^k} lies in exactly one dyadic block, so the norm is
// (sum_k 2^k |a_k|^p)^{1/p}.
inline double lacunary_besov(const std::vector<cplx>& a, double p) {
  long double acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    acc += std::pow(2.0L, static_cast<long double>(k)) * std::pow(std::abs(std::complex<long double>(a[k])), static_cast<long double>(p));
  }
  return static_cast<double>(std::pow(acc, 1.0L / p));
}

// Squared Besov B^s_{2,2} norm from Parseval: sum_n 4^{ns} sum_k W^_n(k)^2 |a_k|^2.
inline double besov_22(const std::vector<cplx>& a, double s) {
  long double total = 0;
  for (unsigned n = 0; n < 40; ++n) {
    long double level = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const long double w = wn_hat(n, static_cast<long long>(k));
      level += w * w * std::norm(std::complex<long double>(a[k]));
    }
    total += std::pow(4.0L, static_cast<long double>(n) * s) * level;
  }
  return static_cast<double>(std::sqrt(total));
}

}  // namespace oracle

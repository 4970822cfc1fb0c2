#pragma once

// Norm functionals on formal series: L^p(T; E) circle norms, Besov norms
// B^s_{p,q}, weighted sequence norms l_p^s, weighted disc norms, the
// complementation map P and the bilinear duality pairing.
//
// The circle carries its Haar probability measure and the disc the measure
// (normalized angle) x (r dr), so the disc has total mass 1/2 and
//   int_0^1 (1-r)^{2s-1} r^{2k+1} dr = 1 / (2s D_{2k+1}^{2s})
// is exactly the squared disc norm of z^k at p = 2.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "hankel_lab/report.hpp"
#include "hankel_lab/series.hpp"

namespace hankel_lab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct BesovParams {
  double p = 2.0;
  double q = 2.0;
  double s = 0.0;

  void validate() const;
};

// Angular grid size (power of two, >= 4) and Gauss-Legendre nodes per dyadic
// radial slice (one of 8, 16, 24, 32).
struct GridSpec {
  std::size_t angular = 64;
  std::size_t radial = 16;

  // Smallest power of two >= oversample * (degree + 1), and at least 4.
  static GridSpec for_degree(std::size_t degree, std::size_t oversample = 8);
  void validate() const;
};

// Norm of the values f(z) in E: modulus for scalars, Schatten-p_e for d x d blocks.
struct PointwiseNorm {
  enum class Kind { absolute, schatten };
  Kind kind = Kind::absolute;
  double p_e = 2.0;

  static PointwiseNorm absolute() { return {Kind::absolute, 2.0}; }
  static PointwiseNorm schatten(double p_e);
  double exponent() const { return kind == Kind::absolute ? 2.0 : p_e; }
};

// ((1/M) sum_m ||f(z_m)||^p)^{1/p}; p = inf takes the grid maximum on a grid of
// at least 8(N+1) points. Refuses grids smaller than 2(N+1).
double circle_lp_norm(const FormalSeries& f, double p, PointwiseNorm pw, GridSpec grid);
// (1/M) sum_m ||f(z_m)||^p, finite p only.
double circle_lp_power(const FormalSeries& f, double p, PointwiseNorm pw, GridSpec grid);

// Index of the last dyadic block that can meet the support of f.
unsigned besov_levels(const FormalSeries& f);
// (2^{ns} ||W_n * f||_p)_{n} per level, n = 0..besov_levels(f).
std::vector<double> besov_sequence(const FormalSeries& f, const BesovParams& bp, PointwiseNorm pw,
                                   GridSpec grid);
double besov_norm(const FormalSeries& f, const BesovParams& bp, PointwiseNorm pw, GridSpec grid);

// ||(2^{ns} x_n)_n||_p.
double weighted_lps_norm(std::span<const double> x, double p, double s);

// (int_0^1 (1-r)^{ps-1} ||f_r||_p^p r dr)^{1/p}, s > 0, p finite.
double weighted_disc_norm(const FormalSeries& f, double p, double s, PointwiseNorm pw,
                          GridSpec grid);
// ||f(0)|| + weighted_disc_norm(f', p, s+1), s > -1.
double weighted_disc_norm_derivative(const FormalSeries& f, double p, double s, PointwiseNorm pw,
                                     GridSpec grid);

struct ComplementationResult {
  FormalSeries image;
  CheckReport report;
};

// P((a_n)) = sum_n V_n * a_n, with a report comparing ||P(a)||_{B^s_{p,q}}
// against 4(2^{-2s} + 2^{-s} + 1 + 2^s + 2^{2s}) ||(a_n)||_{l_q^s(L^p)}.
ComplementationResult complementation_map(const std::vector<FormalSeries>& a,
                                          const BesovParams& bp, PointwiseNorm pw, GridSpec grid);
double complementation_constant(double s);

// sum_n sum_{u,v} f^(n)_{uv} g^(n)_{uv}, no conjugation.
cplx duality_pairing(const FormalSeries& f, const FormalSeries& g);

}  // namespace hankel_lab

#include "hankel_lab/norms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "hankel_lab/kernels.hpp"

namespace hankel_lab {

namespace {

constexpr double kRadialCutoff = 1e-6;

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

template <unsigned N>
QuadratureRule gauss_rule() {
  using rule = boost::math::quadrature::gauss<double, N>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  QuadratureRule q;
  // Boost stores the non-negative half of a symmetric rule.
  for (std::size_t i = 0; i < x.size(); ++i) {
    q.nodes.push_back(x[i]);
    q.weights.push_back(w[i]);
    if (x[i] != 0.0) {
      q.nodes.push_back(-x[i]);
      q.weights.push_back(w[i]);
    }
  }
  return q;
}

const QuadratureRule& radial_rule(std::size_t nodes) {
  static const QuadratureRule r8 = gauss_rule<8>();
  static const QuadratureRule r16 = gauss_rule<16>();
  static const QuadratureRule r24 = gauss_rule<24>();
  static const QuadratureRule r32 = gauss_rule<32>();
  switch (nodes) {
    case 8: return r8;
    case 16: return r16;
    case 24: return r24;
    case 32: return r32;
    default:
      throw std::invalid_argument("radial quadrature supports 8, 16, 24 or 32 nodes, got " +
                                  std::to_string(nodes));
  }
}

void check_pointwise(const FormalSeries& f, PointwiseNorm pw) {
  if (pw.kind == PointwiseNorm::Kind::absolute && f.block_dim() != 1) {
    throw std::invalid_argument("absolute pointwise norm requires scalar coefficients (d = 1)");
  }
}

std::size_t checked_grid(const FormalSeries& f, GridSpec grid) {
  grid.validate();
  const std::size_t required = min_grid_points(f.degree());
  if (grid.angular < required) {
    throw std::invalid_argument("angular grid of " + std::to_string(grid.angular) +
                                " points is too small for degree " + std::to_string(f.degree()) +
                                "; need at least " + std::to_string(required));
  }
  return grid.angular;
}

std::vector<double> grid_norms(const FormalSeries& f, PointwiseNorm pw, std::size_t M) {
  const GridValues values = evaluate_on_grid(f, M);
  std::vector<double> norms(values.points());
  kernels::block_norms_parallel(values.raw(), f.block_dim(), pw.exponent(), norms);
  return norms;
}

double pointwise_value_norm(const Block& b, PointwiseNorm pw) {
  double out = 0.0;
  kernels::block_norms_serial({b.data(), static_cast<std::size_t>(b.size())},
                              static_cast<std::size_t>(b.rows()), pw.exponent(), {&out, 1});
  return out;
}

}  // namespace

void BesovParams::validate() const {
  if (!(p >= 1.0) || !(q >= 1.0)) {
    throw std::invalid_argument("Besov parameters require p >= 1 and q >= 1");
  }
  if (!std::isfinite(s)) throw std::invalid_argument("Besov smoothness s must be finite");
}

GridSpec GridSpec::for_degree(std::size_t degree, std::size_t oversample) {
  GridSpec g;
  g.angular = std::max<std::size_t>(4, next_pow2(oversample * (degree + 1)));
  return g;
}

void GridSpec::validate() const {
  if (angular < 4 || !std::has_single_bit(angular)) {
    throw std::invalid_argument("angular grid must be a power of two >= 4, got " +
                                std::to_string(angular));
  }
  if (radial < 8) throw std::invalid_argument("radial grid needs at least 8 nodes");
}

PointwiseNorm PointwiseNorm::schatten(double p_e) {
  if (!(p_e >= 1.0)) throw std::invalid_argument("Schatten pointwise norm requires p_e >= 1");
  return {Kind::schatten, p_e};
}

double circle_lp_power(const FormalSeries& f, double p, PointwiseNorm pw, GridSpec grid) {
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("circle_lp_power: need finite p >= 1");
  check_pointwise(f, pw);
  const std::size_t M = checked_grid(f, grid);
  if (f.is_zero()) return 0.0;
  return kernels::mean_power(grid_norms(f, pw, M), p);
}

double circle_lp_norm(const FormalSeries& f, double p, PointwiseNorm pw, GridSpec grid) {
  if (!(p >= 1.0)) throw std::invalid_argument("circle_lp_norm: need p >= 1");
  check_pointwise(f, pw);
  std::size_t M = checked_grid(f, grid);
  if (f.is_zero()) return 0.0;
  if (std::isinf(p)) {
    M = std::max(M, next_pow2(8 * (f.degree() + 1)));
    const auto norms = grid_norms(f, pw, M);
    return *std::max_element(norms.begin(), norms.end());
  }
  const auto norms = grid_norms(f, pw, M);
  const double vmax = *std::max_element(norms.begin(), norms.end());
  if (vmax == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : norms) acc += std::pow(v / vmax, p);
  return vmax * std::pow(acc / static_cast<double>(norms.size()), 1.0 / p);
}

unsigned besov_levels(const FormalSeries& f) {
  const std::size_t N = f.degree();
  if (N <= 1) return 0;
  // Largest n with 2^{n-1} < N; W_n vanishes at k = 2^{n-1}.
  return static_cast<unsigned>(std::bit_width(N - 1));
}

std::vector<double> besov_sequence(const FormalSeries& f, const BesovParams& bp, PointwiseNorm pw,
                                   GridSpec grid) {
  bp.validate();
  check_pointwise(f, pw);
  checked_grid(f, grid);
  const unsigned levels = besov_levels(f);
  std::vector<double> seq(levels + 1, 0.0);
  for (unsigned n = 0; n <= levels; ++n) {
    FormalSeries piece = kernel_convolve({n, KernelId::Variant::W}, f);
    if (piece.is_sparse()) piece = piece.to_sparse();
    if (piece.is_zero()) continue;
    seq[n] = std::exp2(static_cast<double>(n) * bp.s) * circle_lp_norm(piece, bp.p, pw, grid);
  }
  return seq;
}

double besov_norm(const FormalSeries& f, const BesovParams& bp, PointwiseNorm pw, GridSpec grid) {
  const auto seq = besov_sequence(f, bp, pw, grid);
  return kernels::lp_combine(seq, bp.q);
}

double weighted_lps_norm(std::span<const double> x, double p, double s) {
  std::vector<double> scaled(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (x[n] < 0.0) throw std::invalid_argument("weighted_lps_norm: entries must be >= 0");
    scaled[n] = std::exp2(static_cast<double>(n) * s) * x[n];
  }
  return kernels::lp_combine(scaled, p);
}

double weighted_disc_norm(const FormalSeries& f, double p, double s, PointwiseNorm pw,
                          GridSpec grid) {
  if (!(s > 0.0)) {
    throw std::invalid_argument("weighted_disc_norm: the weight (1-r)^{ps-1} diverges for s <= 0");
  }
  if (!(p >= 1.0) || std::isinf(p)) {
    throw std::invalid_argument("weighted_disc_norm: need finite p >= 1");
  }
  check_pointwise(f, pw);
  checked_grid(f, grid);
  if (f.is_zero()) return 0.0;

  const double a = p * s;
  const QuadratureRule& rule = radial_rule(grid.radial);
  auto integrand = [&](double r) { return circle_lp_power(dilate(f, r), p, pw, grid) * r; };

  // Dyadic slices [1 - 2^-m, 1 - 2^-(m+1)] keep (1-r)^{a-1} smooth on each slice.
  double total = 0.0;
  double width = 1.0;  // 2^-m
  while (width >= kRadialCutoff) {
    const double lo = 1.0 - width;
    const double half = width / 4.0;
    const double mid = lo + half;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = mid + half * rule.nodes[i];
      total += half * rule.weights[i] * std::pow(1.0 - r, a - 1.0) * integrand(r);
    }
    width /= 2.0;
  }
  // Tail [1 - width, 1]: integrand frozen at the weight's centroid.
  const double centroid = 1.0 - width * a / (a + 1.0);
  total += integrand(centroid) * std::pow(width, a) / a;
  return std::pow(total, 1.0 / p);
}

double weighted_disc_norm_derivative(const FormalSeries& f, double p, double s, PointwiseNorm pw,
                                     GridSpec grid) {
  if (!(s > -1.0)) throw std::invalid_argument("weighted_disc_norm_derivative: need s > -1");
  check_pointwise(f, pw);
  const double at_zero = pointwise_value_norm(f.coeff(0), pw);
  return at_zero + weighted_disc_norm(f.derivative(), p, s + 1.0, pw, grid);
}

double complementation_constant(double s) {
  double sum = 0.0;
  for (int e = -2; e <= 2; ++e) sum += std::exp2(e * s);
  return 4.0 * sum;
}

ComplementationResult complementation_map(const std::vector<FormalSeries>& a,
                                          const BesovParams& bp, PointwiseNorm pw, GridSpec grid) {
  bp.validate();
  const std::size_t d = a.empty() ? 1 : a.front().block_dim();
  FormalSeries image(d);
  std::vector<double> piece_norms(a.size(), 0.0);
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a[n].block_dim() != d) {
      throw std::invalid_argument("complementation_map: block dimension mismatch");
    }
    image = image + kernel_convolve({static_cast<unsigned>(n), KernelId::Variant::V}, a[n]);
    piece_norms[n] = circle_lp_norm(a[n], bp.p, pw, grid);
  }
  image = image.to_dense();
  const double input_norm = weighted_lps_norm(piece_norms, bp.q, bp.s);
  const double measured = besov_norm(image, bp, pw, grid);
  const double bound = complementation_constant(bp.s) * input_norm;
  nlohmann::ordered_json params{{"p", bp.p}, {"q", bp.q}, {"s", bp.s}, {"pieces", a.size()},
                                {"input_norm", input_norm}};
  auto report = CheckReport::inequality("complementation", params, measured, bound, 1e-3,
                                        "||P(a)||_B <= 4(2^-2s+2^-s+1+2^s+2^2s) ||a||_{l_q^s(L^p)}");
  return {std::move(image), std::move(report)};
}

cplx duality_pairing(const FormalSeries& f, const FormalSeries& g) {
  if (f.block_dim() != g.block_dim()) {
    throw std::invalid_argument("duality_pairing: block dimension mismatch");
  }
  cplx acc{};
  for (std::size_t i = 0; i < f.stored_terms(); ++i) {
    const auto k = f.stored_degree(i);
    if (k > g.degree()) break;
    acc += (f.stored_block(i).array() * g.coeff(k).array()).sum();
  }
  return acc;
}

}  // namespace hankel_lab

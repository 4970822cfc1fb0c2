#include "hankel_lab/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

#include "hankel_lab/random.hpp"

namespace hankel_lab {

namespace {

using json = nlohmann::ordered_json;

double l2(std::span<const cplx> v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

json p_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

double inverse_two_p(double p) { return std::isinf(p) ? 0.0 : 1.0 / (2.0 * p); }

PointwiseNorm pointwise_for(const FormalSeries& f, double p_e) {
  return f.block_dim() == 1 ? PointwiseNorm::absolute() : PointwiseNorm::schatten(p_e);
}

FormalSeries window_series(const MultiplierSymbol& lambda) {
  const auto v = lambda.values();
  return FormalSeries::scalar({v.begin(), v.end()});
}

double weight_l2(double alpha, std::size_t m) {
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) acc += std::pow(1.0 + static_cast<double>(j), 2.0 * alpha);
  return std::sqrt(acc);
}

double multiplier_l1_bound(const MultiplierSymbol& lambda) {
  const auto v = lambda.values();
  // Steps across all of Z, including those onto the zero extension.
  double steps = 0.0;
  cplx prev{};
  for (const auto& x : v) {
    steps += std::norm(x - prev);
    prev = x;
  }
  steps += std::norm(prev);
  return 2.0 / std::sqrt(std::numbers::pi) * std::sqrt(l2(v) * std::sqrt(steps));
}

double measured_l1(const MultiplierSymbol& lambda, GridSpec grid) {
  // |sum lambda_k z^k| = |sum lambda_k z^{k-first}| on the circle.
  const FormalSeries f = window_series(lambda);
  grid.angular = std::max(grid.angular, next_pow2(64 * (f.degree() + 1)));
  return circle_lp_norm(f, 1.0, PointwiseNorm::absolute(), grid);
}

}  // namespace

CheckReport check_d_convolution(double alpha, double beta, std::size_t n_max, double tol) {
  double worst = 0.0;
  std::size_t worst_n = 0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    double lhs = 0.0;
    for (std::size_t j = 0; j <= n; ++j) lhs += dn(j, alpha) * dn(n - j, beta);
    const double rhs = dn(n, alpha + beta + 1.0);
    const double err = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
    if (err > worst) {
      worst = err;
      worst_n = n;
    }
  }
  json params{{"alpha", alpha}, {"beta", beta}, {"n_max", n_max}, {"worst_n", worst_n}};
  return CheckReport::inequality("d_convolution", std::move(params), worst, tol, 0.0,
                                 "max_n relative error of sum_{j+k=n} D_j^a D_k^b vs D_n^{a+b+1}");
}

CheckReport check_multiplier_l1(const MultiplierSymbol& lambda, GridSpec grid, double tol) {
  const double measured = measured_l1(lambda, grid);
  const double bound = multiplier_l1_bound(lambda);
  json params{{"first", lambda.first()}, {"last", lambda.last()}};
  return CheckReport::inequality("multiplier_l1", std::move(params), measured, bound, tol,
                                 "||sum lambda_k z^k||_1 <= (2/sqrt(pi)) sqrt(||lambda||_2 ||Dlambda||_2)");
}

CheckReport check_dyadic_kernel_l1(unsigned n, double tol) {
  const auto lambda = MultiplierSymbol::dyadic_kernel(n);
  const double measured = measured_l1(lambda, {});
  const double generic = multiplier_l1_bound(lambda);
  const double cap = 2.0 * std::sqrt(3.0 / std::numbers::pi);
  json params{{"n", n}, {"multiplier_bound", generic}, {"kernel_cap", cap}};
  return CheckReport::inequality("dyadic_kernel_l1", std::move(params), measured,
                                 std::min(generic, cap), tol,
                                 "||W_n||_1 <= min(multiplier bound, 2 sqrt(3/pi))");
}

CheckReport check_restricted_multiplier(const MultiplierSymbol& lambda, std::int64_t first,
                                        std::int64_t last, double p, int trials,
                                        std::uint64_t seed) {
  if (first < 0 || last < first) {
    throw std::invalid_argument("check_restricted_multiplier: need 0 <= first <= last");
  }
  if (!(p >= 1.0)) throw std::invalid_argument("check_restricted_multiplier: need p >= 1");
  const auto N = static_cast<double>(last - first + 1);
  double sup = 0.0;
  double sup_step = 0.0;
  for (auto k = first; k <= last; ++k) {
    sup = std::max(sup, std::abs(lambda(k)));
    if (k < last) sup_step = std::max(sup_step, std::abs(lambda(k + 1) - lambda(k)));
  }
  const double factor = 2.0 * std::max(sup, std::sqrt(N * sup * sup_step));

  Rng rng(seed);
  const GridSpec grid = GridSpec::for_degree(static_cast<std::size_t>(last), 64);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::pair<std::size_t, cplx>> terms;
    for (auto k = first; k <= last; ++k) {
      terms.emplace_back(static_cast<std::size_t>(k), complex_gaussian(rng));
    }
    const FormalSeries f = FormalSeries::sparse_scalar(terms).to_dense();
    const double nf = circle_lp_norm(f, p, PointwiseNorm::absolute(), grid);
    if (nf == 0.0) continue;
    const double nm = circle_lp_norm(apply_multiplier(lambda, f), p, PointwiseNorm::absolute(), grid);
    worst = std::max(worst, nm / nf);
  }
  const double tol = p == 2.0 ? kExactSlack : kQuadratureSlack;
  json params{{"first", first}, {"last", last}, {"p", p_json(p)}, {"trials", trials},
              {"sup", sup}, {"sup_step", sup_step}};
  return CheckReport::inequality("restricted_multiplier", std::move(params), worst, factor, tol,
                                 "worst ||M f||_p/||f||_p <= 2 max(sup, sqrt(N sup supD))");
}

CheckReport check_beta_integral(double s, std::size_t k, double tol) {
  if (!(s > 0.0)) throw std::invalid_argument("check_beta_integral: need s > 0");
  const double a = 2.0 * s - 1.0;
  const double b = 2.0 * static_cast<double>(k) + 1.0;
  // The complement argument gives 1-r without cancellation near r = 1.
  auto integrand = [a, b](double r, double rc) {
    const double one_minus = r > 0.5 ? rc : 1.0 - r;
    return std::pow(one_minus, a) * std::pow(r, b);
  };
  boost::math::quadrature::tanh_sinh<double> quad;
  const double numeric = quad.integrate(integrand, 0.0, 1.0, 1e-12);
  const double closed = 1.0 / (2.0 * s * dn(2 * k + 1, 2.0 * s));
  json params{{"s", s}, {"k", k}, {"quadrature", numeric}, {"closed_form", closed}};
  return CheckReport::identity("beta_integral", std::move(params), numeric / closed, 1.0, tol,
                               "quadrature / (1/(2s D_{2k+1}^{2s})) = 1");
}

CheckReport check_factorization(const FormalSeries& f, double alpha, double beta, double p,
                                std::size_t m, double tol) {
  const double h = inverse_two_p(p);
  const std::size_t d = f.block_dim();
  const Eigen::MatrixXcd dh = d_power(m, h, d).dense();
  const Eigen::MatrixXcd lhs = dh * hankel_matrix(f, alpha + h, beta + h, m).dense() * dh;
  const Eigen::MatrixXcd rhs = hankel_matrix(f, alpha, beta, m).dense();
  double worst = 0.0;
  for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
    for (Eigen::Index r = 0; r < rhs.rows(); ++r) {
      const double dev = std::abs(lhs(r, c) - rhs(r, c)) / std::max(1.0, std::abs(rhs(r, c)));
      worst = std::max(worst, dev);
    }
  }
  json params{{"alpha", alpha}, {"beta", beta}, {"p", p_json(p)}, {"m", m},
              {"degree", f.degree()}, {"d", d}};
  return CheckReport::inequality("factorization", std::move(params), worst, tol, 0.0,
                                 "entrywise |x-y|/max(1,|y|) of D^h G^{a+h,b+h} D^h vs G^{a,b}");
}

CheckReport check_duality_identity(const FormalSeries& phi, const FormalSeries& psi,
                                   double alpha, double beta, std::size_t m, double tol) {
  if (m < phi.degree() + psi.degree() + 1) {
    throw std::invalid_argument(fmt::format(
        "check_duality_identity: m = {} leaves antidiagonals incomplete; need m >= {}", m,
        phi.degree() + psi.degree() + 1));
  }
  const cplx lhs =
      trace_pairing(hankel_matrix(phi, alpha, beta, m), gamma_tilde_11(psi, alpha, beta, m));
  cplx rhs{};
  double scale = 0.0;
  const std::size_t top = std::min(phi.degree(), psi.degree());
  for (std::size_t n = 0; n <= top; ++n) {
    const Block a = phi.coeff(n);
    const Block b = psi.coeff(n);
    const double w = dn(n, alpha + beta + 3.0);
    rhs += w * (a.array() * b.array()).sum();
    scale += std::abs(w) * (a.array().abs() * b.array().abs()).sum();
  }
  const double err = scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
  json params{{"alpha", alpha}, {"beta", beta}, {"m", m}, {"deg_phi", phi.degree()},
              {"deg_psi", psi.degree()}, {"d", phi.block_dim()}};
  return CheckReport::inequality("duality_identity", std::move(params), err, tol, 0.0,
                                 "|<G^{a,b}_phi, G~_psi> - sum D_n^{a+b+3} phi^(n) psi^(n)| / scale");
}

CheckReport check_paley_lower_bound(std::span<const cplx> a, double tol, std::uint64_t seed) {
  if (a.empty()) throw std::invalid_argument("check_paley_lower_bound: empty coefficient list");
  const std::size_t n = a.size() - 1;
  if (n >= 62 || (std::size_t{1} << n) + 1 > kMaxLacunaryWindow) {
    throw std::length_error(fmt::format("check_paley_lower_bound: window 2^{}+1 exceeds {}", n,
                                        kMaxLacunaryWindow));
  }
  const std::size_t m = (std::size_t{1} << n) + 1;
  const FormalSeries phi = lacunary_series(a);
  const auto c = hankel_coefficients(phi, m);
  const auto result = operator_norm_power(hankel_fft_operator(c, m), 400, 1e-10, seed);
  const double target = l2(a) / 3.0;
  json params{{"n", n}, {"m", m}, {"norm_a", l2(a)}, {"estimate", result.estimate},
              {"iterations", result.iterations}, {"converged", result.converged},
              {"tol", tol}, {"power_seed", seed}};
  return CheckReport::inequality("paley_lower_bound", std::move(params), target - tol,
                                 result.estimate, 0.0,
                                 "||a||_2/3 - tol <= power-iteration estimate of ||Gamma_phi_a||");
}

CheckReport check_main_inequality(const FormalSeries& f, double p, double alpha, double beta,
                                  std::size_t m, GridSpec grid, Envelope envelope) {
  if (!(p >= 1.0)) throw std::invalid_argument("check_main_inequality: need p >= 1");
  const double h = inverse_two_p(p);
  const double lowest = std::min(alpha, beta);
  if (std::isinf(p) ? lowest < 0.0 : !(lowest + h > 0.0)) {
    throw std::invalid_argument("check_main_inequality: need min(alpha, beta) > -1/2p");
  }
  if (f.degree() >= m) {
    throw std::invalid_argument("check_main_inequality: need deg f < m");
  }
  const PointwiseNorm pw = pointwise_for(f, p);
  const double schatten = schatten_norm(hankel_matrix(f, alpha, beta, m), p);
  const BesovParams bp{p, p, 2.0 * h + alpha + beta};
  const double besov = besov_norm(f, bp, pw, grid);
  json params{{"p", p_json(p)}, {"alpha", alpha}, {"beta", beta}, {"m", m},
              {"degree", f.degree()}, {"d", f.block_dim()}, {"schatten", schatten},
              {"besov", besov}, {"envelope_lo", envelope.lo}, {"envelope_hi", envelope.hi}};
  if (besov == 0.0) {
    params["rho"] = 0.0;
    return CheckReport::inequality("main_inequality", std::move(params), 0.0, 1.0, 0.0,
                                   "zero symbol, skipped");
  }
  const double rho = schatten / besov;
  params["rho"] = rho;
  // rho in [lo, hi] is max(rho/hi, lo/rho) <= 1.
  const double measured = std::max(rho / envelope.hi, envelope.lo / rho);
  return CheckReport::inequality("main_inequality", std::move(params), measured, 1.0, 0.0,
                                 "rho = ||G^{a,b}_f||_Sp / ||f||_B in envelope, as max(rho/hi, lo/rho)");
}

CheckReport check_rank_one(double p, std::size_t m, double tol) {
  const FormalSeries one = FormalSeries::monomial(0);
  const double schatten = schatten_norm(hankel_matrix(one, 0.0, 0.0, m), p);
  const double besov = besov_norm(one, {p, p, 2.0 * inverse_two_p(p)}, PointwiseNorm::absolute(),
                                  GridSpec{});
  json params{{"p", p_json(p)}, {"m", m}, {"schatten", schatten}, {"besov", besov}};
  const double dev = std::max(std::abs(schatten - 1.0), std::abs(besov - 1.0));
  return CheckReport::inequality("rank_one", std::move(params), dev, tol, 0.0,
                                 "max(|S_p - 1|, |B - 1|) for f = 1");
}

CheckReport check_s1_bound(const FormalSeries& f, double alpha, double beta, std::size_t m,
                           double tol) {
  if (f.block_dim() != 1) throw std::invalid_argument("check_s1_bound: scalar symbols only");
  if (f.degree() >= m) throw std::invalid_argument("check_s1_bound: need deg f < m");
  // M >= 2m makes the discrete rank-one decomposition of Gamma exact.
  GridSpec grid;
  grid.angular = std::max(next_pow2(2 * m), next_pow2(8 * (f.degree() + 1)));
  const double l1 = circle_lp_norm(f, 1.0, PointwiseNorm::absolute(), grid);
  const double measured = schatten_norm(hankel_matrix(f, alpha, beta, m), 1.0);
  const double bound = weight_l2(alpha, m) * weight_l2(beta, m) * l1 + tol;
  json params{{"alpha", alpha}, {"beta", beta}, {"m", m}, {"degree", f.degree()},
              {"l1", l1}, {"grid", grid.angular}};
  return CheckReport::inequality("s1_bound", std::move(params), measured, bound, 1e-12,
                                 "||G^{a,b}_f||_S1 <= ||(1+j)^a||_2 ||(1+k)^b||_2 ||f||_1 + 1e-6");
}

CheckReport check_hilbert_equivalence(const FormalSeries& f, double s, GridSpec grid,
                                      double band) {
  if (!(s > 0.0)) throw std::invalid_argument("check_hilbert_equivalence: need s > 0");
  json params{{"s", s}, {"degree", f.degree()}, {"d", f.block_dim()}, {"band", band}};
  if (f.is_zero()) {
    return CheckReport::inequality("hilbert_equivalence", std::move(params), 0.0, band, 0.0,
                                   "zero symbol, skipped");
  }
  const PointwiseNorm pw = pointwise_for(f, 2.0);
  const double besov = besov_norm(f, {2.0, 2.0, -s}, pw, grid);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.stored_terms(); ++i) {
    const auto k = static_cast<double>(f.stored_degree(i));
    acc += f.stored_block(i).squaredNorm() * std::pow(1.0 + k, -2.0 * s);
  }
  const double weighted = std::sqrt(acc);
  const double disc = std::sqrt(s) * weighted_disc_norm(f, 2.0, s, pw, grid);
  const double r1 = besov / weighted;
  const double r2 = weighted / disc;
  params["besov"] = besov;
  params["weighted_l2"] = weighted;
  params["sqrt_s_disc"] = disc;
  params["besov_over_weighted"] = r1;
  params["weighted_over_disc"] = r2;
  const double measured = std::max({r1, 1.0 / r1, r2, 1.0 / r2});
  return CheckReport::inequality("hilbert_equivalence", std::move(params), measured, band, 0.0,
                                 "largest of the two ratios and their inverses <= band");
}

// ---------------------------------------------------------------------------
// Suite registry

namespace {

constexpr std::array<double, 5> kConvolutionExponents{-0.4, 0.0, 0.7, 1.0, 2.3};
constexpr std::array<double, 4> kBetaSmoothness{0.1, 0.5, 1.0, 2.0};
constexpr std::array<double, 5> kHilbertSmoothness{0.1, 0.5, 1.0, 2.0, 3.0};
constexpr std::array<double, 6> kSchattenGrid{1.0, 1.5, 2.0, 3.0, 4.0, kInf};
constexpr std::array<double, 4> kRestrictedGrid{1.0, 2.0, 4.0, kInf};

template <std::size_t N>
double pick(Rng& rng, const std::array<double, N>& values) {
  return values[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(N) - 1))];
}

std::size_t pick_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(
      uniform_int(rng, static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

// Exponent in (-1/2p, hi], away from the endpoint.
double pick_exponent(Rng& rng, double p, double hi) {
  const double lo = -inverse_two_p(p) * 0.9;
  return uniform(rng, lo, hi);
}

MultiplierSymbol random_window(Rng& rng) {
  const auto first = uniform_int(rng, -8, 16);
  const auto len = pick_size(rng, 1, 32);
  return {first, complex_gaussian_vector(rng, len)};
}

}  // namespace

std::vector<SuiteEntry> build_check_suite(const SuiteOptions& opt) {
  std::vector<SuiteEntry> suite;
  if (opt.trials <= 0) return suite;
  const double ts = opt.tolerance_scale;
  const auto trials = static_cast<std::size_t>(opt.trials);
  auto add = [&](std::string name, std::size_t index, std::function<CheckReport(std::uint64_t)> fn) {
    suite.push_back({std::move(name), index, std::move(fn)});
  };

  add("partition_of_unity", 0, [](std::uint64_t) { return partition_of_unity_check(4096); });

  std::size_t idx = 0;
  for (double a : kConvolutionExponents) {
    for (double b : kConvolutionExponents) {
      add("d_convolution", idx++,
          [=](std::uint64_t) { return check_d_convolution(a, b, 64, 1e-10 * ts); });
    }
  }
  idx = 0;
  for (double s : kBetaSmoothness) {
    for (std::size_t k = 0; k <= 8; ++k) {
      add("beta_integral", idx++, [=](std::uint64_t) { return check_beta_integral(s, k, 1e-6 * ts); });
    }
  }
  for (unsigned n = 0; n <= 10; ++n) {
    add("dyadic_kernel_l1", n,
        [=](std::uint64_t) { return check_dyadic_kernel_l1(n, kQuadratureSlack * ts); });
  }
  idx = 0;
  for (double p : {1.0, 1.5, 2.0, 3.0, 64.0, kInf}) {
    add("rank_one", idx++, [=](std::uint64_t) { return check_rank_one(p, 8, 1e-10 * ts); });
  }
  for (unsigned n = 0; n <= opt.paley_max_n; ++n) {
    add("paley_lower_bound", n, [=](std::uint64_t seed) {
      const std::vector<cplx> ones(n + 1, 1.0);
      return check_paley_lower_bound(ones, 1e-3, seed);
    });
  }

  for (std::size_t t = 0; t < trials; ++t) {
    add("factorization", t, [=](std::uint64_t seed) {
      Rng rng(seed);
      const double p = pick(rng, kSchattenGrid);
      const std::size_t m = pick_size(rng, 1, 32);
      const std::size_t d = pick_size(rng, 1, 2);
      const FormalSeries f = gaussian_series(rng, pick_size(rng, 0, 2 * m - 2), d);
      const double alpha = uniform(rng, -0.45, 2.0);
      const double beta = uniform(rng, -0.45, 2.0);
      return check_factorization(f, alpha, beta, p, m, 1e-12 * ts);
    });
    add("duality_identity", t, [=](std::uint64_t seed) {
      Rng rng(seed);
      const std::size_t d = pick_size(rng, 1, 2);
      const FormalSeries phi = gaussian_series(rng, pick_size(rng, 0, 16), d);
      const FormalSeries psi = gaussian_series(rng, pick_size(rng, 0, 16), d);
      const double alpha = uniform(rng, -0.45, 2.0);
      const double beta = uniform(rng, -0.45, 2.0);
      const std::size_t m = phi.degree() + psi.degree() + 1 + pick_size(rng, 0, 4);
      return check_duality_identity(phi, psi, alpha, beta, m, 1e-10 * ts);
    });
    add("multiplier_l1", t, [=](std::uint64_t seed) {
      Rng rng(seed);
      return check_multiplier_l1(random_window(rng), {}, kQuadratureSlack * ts);
    });
    add("restricted_multiplier", t, [=](std::uint64_t seed) {
      Rng rng(seed);
      const auto first = uniform_int(rng, 0, 32);
      const auto last = first + uniform_int(rng, 0, 31);
      const double p = pick(rng, kRestrictedGrid);
      const auto lambda = random_window(rng);
      return check_restricted_multiplier(lambda, first, last, p, 5, splitmix64(seed));
    });
    add("s1_bound", t, [=](std::uint64_t seed) {
      Rng rng(seed);
      const std::size_t m = pick_size(rng, 1, 64);
      const FormalSeries f = gaussian_series(rng, pick_size(rng, 0, m - 1));
      const double alpha = uniform(rng, -0.45, 2.0);
      const double beta = uniform(rng, -0.45, 2.0);
      return check_s1_bound(f, alpha, beta, m, 1e-6 * ts);
    });
    add("main_inequality", t, [=](std::uint64_t seed) {
      Rng rng(seed);
      const double p = pick(rng, kSchattenGrid);
      const std::size_t m = pick_size(rng, 1, 32);
      const std::size_t d = pick_size(rng, 1, 2);
      const FormalSeries f = gaussian_series(rng, pick_size(rng, 0, m - 1), d);
      const double alpha = pick_exponent(rng, p, 1.0);
      const double beta = pick_exponent(rng, p, 1.0);
      return check_main_inequality(f, p, alpha, beta, m, GridSpec::for_degree(f.degree()));
    });
    add("hilbert_equivalence", t, [=](std::uint64_t seed) {
      Rng rng(seed);
      const double s = pick(rng, kHilbertSmoothness);
      const FormalSeries f = gaussian_series(rng, pick_size(rng, 0, 64));
      return check_hilbert_equivalence(f, s, GridSpec::for_degree(f.degree()));
    });
    add("complementation", t, [=](std::uint64_t seed) {
      Rng rng(seed);
      const std::size_t pieces = pick_size(rng, 1, 5);
      std::vector<FormalSeries> a;
      for (std::size_t n = 0; n < pieces; ++n) a.push_back(gaussian_series(rng, pick_size(rng, 0, 16)));
      BesovParams bp;
      bp.p = pick(rng, std::array<double, 3>{1.0, 2.0, 4.0});
      bp.q = pick(rng, std::array<double, 3>{1.0, 2.0, kInf});
      bp.s = uniform(rng, -1.0, 1.0);
      return complementation_map(a, bp, PointwiseNorm::absolute(), GridSpec::for_degree(64)).report;
    });
  }

  // Every report carries what is needed to rerun it alone.
  for (auto& e : suite) {
    e.run = [inner = std::move(e.run), name = e.name, index = e.index,
             master = opt.seed](std::uint64_t seed) {
      CheckReport r = inner(seed);
      r.params["suite_index"] = index;
      r.params["seed"] = std::to_string(master);
      r.params["repro"] = fmt::format("hankel-lab check-suite --seed {} --only {} --index {}",
                                      master, name, index);
      return r;
    };
  }
  return suite;
}

}  // namespace hankel_lab

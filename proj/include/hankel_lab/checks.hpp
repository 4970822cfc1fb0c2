#pragma once

// Named verifiers for the explicit identities and inequalities of the theory.
// Each returns a CheckReport; the suite registry enumerates them over a seeded
// corpus.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hankel_lab/hankel.hpp"
#include "hankel_lab/norms.hpp"
#include "hankel_lab/report.hpp"
#include "hankel_lab/series.hpp"

namespace hankel_lab {

// Relative slack for quadrature-based inequality checks.
inline constexpr double kQuadratureSlack = 1e-3;
// Slack for checks whose grid computation is exact (p = 2 through Parseval).
inline constexpr double kExactSlack = 1e-10;

// sum_{j+k=n} D_j^alpha D_k^beta = D_n^{alpha+beta+1} for n <= n_max; measures
// the largest relative error.
CheckReport check_d_convolution(double alpha, double beta, std::size_t n_max, double tol = 1e-10);

// ||sum lambda_k z^k||_{L^1} <= (2/sqrt(pi)) sqrt(||lambda||_2 ||Delta lambda||_2),
// with Delta lambda taken over all of Z.
CheckReport check_multiplier_l1(const MultiplierSymbol& lambda, GridSpec grid = {},
                                double tol = kQuadratureSlack);
// Same for lambda = W^_n, with the bound tightened to min(multiplier bound, 2 sqrt(3/pi)).
CheckReport check_dyadic_kernel_l1(unsigned n, double tol = kQuadratureSlack);

// Worst ||M_lambda f||_p / ||f||_p over random f with spectrum in [first, last],
// against 2 max(sup|lambda|, sqrt(N sup|lambda| sup|Delta lambda|)), N = last-first+1.
CheckReport check_restricted_multiplier(const MultiplierSymbol& lambda, std::int64_t first,
                                        std::int64_t last, double p, int trials,
                                        std::uint64_t seed);

// int_0^1 (1-r)^{2s-1} r^{2k+1} dr = 1/(2s D_{2k+1}^{2s}) by adaptive quadrature.
// Measures quadrature / closed form against 1.
CheckReport check_beta_integral(double s, std::size_t k, double tol = 1e-6);

// D^{1/2p} Gamma^{alpha+1/2p, beta+1/2p}_f D^{1/2p} = Gamma^{alpha,beta}_f, entrywise
// relative deviation |x-y| / max(1,|y|).
CheckReport check_factorization(const FormalSeries& f, double alpha, double beta, double p,
                                std::size_t m, double tol = 1e-12);

// trace_pairing(Gamma^{alpha,beta}_phi, Gamma~^{1,1}_psi) = sum_n D_n^{alpha+beta+3} phi^(n) psi^(n).
// Requires m >= deg(phi) + deg(psi) + 1.
CheckReport check_duality_identity(const FormalSeries& phi, const FormalSeries& psi,
                                   double alpha, double beta, std::size_t m, double tol = 1e-10);

// Largest allowed window 2^n + 1 for the lacunary operator-norm path.
inline constexpr std::size_t kMaxLacunaryWindow = std::size_t{1} << 14;

// Power-iteration lower bound on ||Gamma_{phi_a}|| against ||a||_2 / 3 - tol.
CheckReport check_paley_lower_bound(std::span<const cplx> a, double tol = 1e-3,
                                    std::uint64_t seed = 0);

struct Envelope {
  double lo = 1.0 / 16.0;
  double hi = 16.0;
};

// rho = ||Gamma^{alpha,beta}_f||_{S^p} / ||f||_{B_p^{1/p+alpha+beta}} must lie in
// the envelope. Requires deg f < m and min(alpha, beta) > -1/2p.
CheckReport check_main_inequality(const FormalSeries& f, double p, double alpha, double beta,
                                  std::size_t m, GridSpec grid, Envelope envelope = {});

// f = 1 gives ||Gamma_f||_{S^p} = 1 = ||f||_{B_p^{1/p}}.
CheckReport check_rank_one(double p, std::size_t m, double tol = 1e-10);

// ||Gamma_f||_{S^1} <= ||((1+j)^alpha)_j||_2 ||((1+k)^beta)_k||_2 ||f||_{L^1} + 1e-6
// for scalar f with deg f < m.
CheckReport check_s1_bound(const FormalSeries& f, double alpha, double beta, std::size_t m,
                           double tol = 1e-6);

// Besov B^{-s}_{2,2}, weighted l^2 and sqrt(s) times the weighted disc norm are
// pairwise comparable; both ratios must lie in [1/band, band].
CheckReport check_hilbert_equivalence(const FormalSeries& f, double s, GridSpec grid,
                                      double band = 10.0);

// One entry of the check suite: the report is produced from a stream derived
// from (master seed, name, index).
struct SuiteEntry {
  std::string name;
  std::size_t index = 0;
  std::function<CheckReport(std::uint64_t seed)> run;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int trials = 20;                // random instances per family
  double tolerance_scale = 1.0;   // multiplies every declared tolerance
  unsigned paley_max_n = 10;
};

// The registry: fixed instances plus `trials` random instances per family.
// trials = 0 gives an empty suite.
std::vector<SuiteEntry> build_check_suite(const SuiteOptions& options);

}  // namespace hankel_lab

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hankel_lab/norms.hpp"
#include "hankel_lab/random.hpp"
#include "oracles.hpp"

using namespace hankel_lab;

namespace {

std::vector<cplx> coeffs(const FormalSeries& f) {
  std::vector<cplx> a(f.degree() + 1);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = f.scalar_coeff(k);
  return a;
}

const PointwiseNorm kAbs = PointwiseNorm::absolute();

}  // namespace

TEST_CASE("circle L^2 norm is exact (Parseval)") {
  Rng rng(11);
  for (std::size_t deg : {0u, 1u, 5u, 31u, 100u}) {
    const FormalSeries f = gaussian_series(rng, deg);
    const auto grid = GridSpec::for_degree(deg, 2);
    CHECK(circle_lp_norm(f, 2.0, kAbs, grid) == doctest::Approx(oracle::parseval(coeffs(f))).epsilon(1e-12));
  }
}

TEST_CASE("circle L^p norms agree with brute-force grid sums") {
  Rng rng(12);
  const FormalSeries f = gaussian_series(rng, 9);
  for (double p : {1.0, 1.5, 3.0, 7.0}) {
    CHECK(circle_lp_norm(f, p, kAbs, {64, 16}) == doctest::Approx(oracle::circle_lp(coeffs(f), p, 64)).epsilon(1e-12));
  }
  CHECK(circle_lp_power(f, 3.0, kAbs, {64, 16}) ==
        doctest::Approx(std::pow(oracle::circle_lp(coeffs(f), 3.0, 64), 3.0)).epsilon(1e-12));
}

TEST_CASE("circle norms of simple symbols") {
  CHECK(circle_lp_norm(FormalSeries::monomial(7, cplx(0, 2)), kInf, kAbs, {16, 16}) == doctest::Approx(2.0));
  // ||1 + z||_1 = 4/pi; the grid rule converges quickly for this symbol.
  CHECK(circle_lp_norm(FormalSeries::scalar({1.0, 1.0}), 1.0, kAbs, {4096, 16}) ==
        doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-6));
  CHECK(circle_lp_norm(FormalSeries(1), 2.0, kAbs, {}) == 0.0);
  CHECK_THROWS_AS(circle_lp_norm(FormalSeries::monomial(40), 2.0, kAbs, {64, 16}), std::invalid_argument);
  CHECK_THROWS_AS(circle_lp_norm(FormalSeries::monomial(1), 2.0, kAbs, {48, 16}), std::invalid_argument);
  CHECK_THROWS_AS(circle_lp_norm(FormalSeries(2), 2.0, kAbs, {}), std::invalid_argument);
}

TEST_CASE("block circle norms use the pointwise Schatten norm") {
  Block b = Block::Zero(2, 2);
  b(0, 0) = 3.0;
  b(1, 1) = 4.0;
  const FormalSeries f = FormalSeries::block_monomial(3, b);
  CHECK(circle_lp_norm(f, 2.0, PointwiseNorm::schatten(2.0), {}) == doctest::Approx(5.0));
  CHECK(circle_lp_norm(f, 5.0, PointwiseNorm::schatten(1.0), {}) == doctest::Approx(7.0));
}

TEST_CASE("Besov norm at p = q = 2 matches the Parseval oracle") {
  Rng rng(13);
  for (double s : {-1.0, -0.25, 0.0, 0.5, 1.0}) {
    const FormalSeries f = gaussian_series(rng, 70);
    const double got = besov_norm(f, {2.0, 2.0, s}, kAbs, GridSpec::for_degree(70));
    CHECK(got == doctest::Approx(oracle::besov_22(coeffs(f), s)).epsilon(1e-10));
  }
}

TEST_CASE("Besov norm of lacunary series") {
  const std::vector<cplx> a{1.0, cplx(0, 2), -1.5, 0.5, 1.0};
  const FormalSeries phi = lacunary_series(a);
  for (double p : {1.0, 2.0, 3.0, 10.0}) {
    const double got = besov_norm(phi, {p, p, 1.0 / p}, kAbs, GridSpec::for_degree(phi.degree()));
    CHECK(got == doctest::Approx(oracle::lacunary_besov(a, p)).epsilon(1e-10));
  }
  // ||phi_a||_{B_p^{1/p}} <= 4 max |a_k| when n = floor(p).
  for (unsigned n = 1; n <= 10; ++n) {
    const std::vector<cplx> ones(n + 1, 1.0);
    const double p = n;
    CHECK(besov_norm(lacunary_series(ones), {p, p, 1.0 / p}, kAbs, GridSpec::for_degree(1u << n)) <= 4.0);
  }
}

TEST_CASE("Besov sequence levels") {
  CHECK(besov_levels(FormalSeries::monomial(0)) == 0);
  CHECK(besov_levels(FormalSeries::monomial(1)) == 0);
  CHECK(besov_levels(FormalSeries::monomial(2)) == 1);
  CHECK(besov_levels(FormalSeries::monomial(5)) == 3);
  const auto seq = besov_sequence(FormalSeries::monomial(8), {2.0, 2.0, 1.0}, kAbs, {});
  REQUIRE(seq.size() == 4);
  CHECK(seq[3] == doctest::Approx(8.0));
  CHECK(seq[0] == 0.0);
}

TEST_CASE("weighted disc norm of z^k reproduces the Beta integral") {
  for (double s : {0.1, 0.5, 1.0, 2.0}) {
    for (std::size_t k : {0u, 1u, 4u, 8u}) {
      const double got = weighted_disc_norm(FormalSeries::monomial(k), 2.0, s, kAbs, {});
      CHECK(got * got == doctest::Approx(oracle::beta_integral(s, k)).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(weighted_disc_norm(FormalSeries::monomial(1), 2.0, 0.0, kAbs, {}), std::invalid_argument);
  CHECK_THROWS_AS(weighted_disc_norm(FormalSeries::monomial(1), kInf, 1.0, kAbs, {}), std::invalid_argument);
}

TEST_CASE("weighted disc norm at p = 2 is the weighted Parseval sum") {
  Rng rng(14);
  const FormalSeries f = gaussian_series(rng, 20);
  const double s = 0.75;
  double expected = 0.0;
  for (std::size_t k = 0; k <= 20; ++k) expected += std::norm(f.scalar_coeff(k)) * oracle::beta_integral(s, k);
  const double got = weighted_disc_norm(f, 2.0, s, kAbs, GridSpec::for_degree(20));
  CHECK(got == doctest::Approx(std::sqrt(expected)).epsilon(1e-6));
}

TEST_CASE("derivative variant") {
  const FormalSeries f = FormalSeries::scalar({2.0, 1.0});
  // |f(0)| + ||(1-|z|)^{s+1-1/2} f'||: f' = 1, so the second term is B(2s+2, 2)^{1/2}.
  const double s = 0.5;
  const double got = weighted_disc_norm_derivative(f, 2.0, s, kAbs, {});
  CHECK(got == doctest::Approx(2.0 + std::sqrt(std::beta(2.0 * s + 2.0, 2.0))).epsilon(1e-6));
  CHECK_THROWS(weighted_disc_norm_derivative(f, 2.0, -1.0, kAbs, {}));
}

TEST_CASE("weighted sequence norm") {
  const std::vector<double> x{1.0, 1.0, 1.0};
  CHECK(weighted_lps_norm(x, 1.0, 1.0) == doctest::Approx(7.0));
  CHECK(weighted_lps_norm(x, kInf, 1.0) == doctest::Approx(4.0));
  CHECK_THROWS(weighted_lps_norm(std::vector<double>{-1.0}, 1.0, 0.0));
}

TEST_CASE("complementation map obeys its explicit constant") {
  CHECK(complementation_constant(0.0) == doctest::Approx(20.0));
  Rng rng(15);
  for (double s : {-1.0, 0.0, 0.5}) {
    std::vector<FormalSeries> a;
    for (int n = 0; n < 5; ++n) a.push_back(gaussian_series(rng, 16));
    const auto res = complementation_map(a, {2.0, 2.0, s}, kAbs, GridSpec::for_degree(64));
    CHECK(res.report.pass);
    CHECK(res.report.measured <= res.report.bound);
  }
  // P(a) with a_n = W_n * f recovers f exactly.
  const FormalSeries f = gaussian_series(rng, 30);
  std::vector<FormalSeries> pieces;
  for (unsigned n = 0; n <= 6; ++n) pieces.push_back(kernel_convolve({n, KernelId::Variant::W}, f));
  const auto res = complementation_map(pieces, {2.0, 2.0, 0.0}, kAbs, GridSpec::for_degree(256));
  for (std::size_t k = 0; k <= 30; ++k) CHECK(std::abs(res.image.scalar_coeff(k) - f.scalar_coeff(k)) < 1e-13);
}

TEST_CASE("duality pairing is bilinear and coefficientwise") {
  const FormalSeries f = FormalSeries::scalar({1.0, 2.0, 3.0});
  const FormalSeries g = FormalSeries::scalar({cplx(0, 1), 1.0});
  CHECK(duality_pairing(f, g) == cplx(2.0, 1.0));
  CHECK_THROWS(duality_pairing(f, FormalSeries(2)));
}

TEST_CASE("grid specification") {
  CHECK(GridSpec::for_degree(0).angular == 8);
  CHECK(GridSpec::for_degree(15).angular == 128);
  CHECK_THROWS((GridSpec{48, 16}.validate()));
  CHECK_THROWS((GridSpec{64, 4}.validate()));
  CHECK_THROWS(PointwiseNorm::schatten(0.5));
  CHECK_THROWS((BesovParams{0.5, 1.0, 0.0}.validate()));
}

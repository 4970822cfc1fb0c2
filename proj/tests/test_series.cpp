#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hankel_lab/random.hpp"
#include "hankel_lab/series.hpp"
#include "oracles.hpp"

using namespace hankel_lab;

TEST_CASE("dn matches the Gamma-function closed form") {
  for (double alpha : {-0.4, 0.0, 0.5, 0.7, 1.0, 2.3, 5.0}) {
    for (std::size_t n : {0u, 1u, 2u, 7u, 64u, 65u, 200u, 1000u}) {
      CHECK(dn(n, alpha) == doctest::Approx(oracle::dn(n, alpha)).epsilon(1e-12));
    }
  }
  CHECK(dn(0, 3.0) == 1.0);
  CHECK(dn(3, 2.0) == doctest::Approx(10.0));
  CHECK(dn(1, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("dyadic kernel coefficients") {
  CHECK(wn_hat(0, 0) == 1.0);
  CHECK(wn_hat(0, 1) == 1.0);
  CHECK(wn_hat(0, 2) == 0.0);
  CHECK(wn_hat(3, 8) == 1.0);
  CHECK(wn_hat(3, 4) == 0.0);
  CHECK(wn_hat(3, 16) == 0.0);
  for (unsigned n = 0; n <= 12; ++n) {
    for (long long k = 0; k <= 9000; k += 7) CHECK(wn_hat(n, k) == oracle::wn_hat(n, k));
  }
  CHECK_THROWS_AS(wn_hat(62, 1), std::out_of_range);
}

TEST_CASE("partition of unity holds exactly") {
  const auto r = partition_of_unity_check(1 << 14);
  CHECK(r.pass);
  CHECK(r.measured == 0.0);
}

TEST_CASE("V kernels are sums of neighbouring W kernels") {
  for (unsigned n = 0; n <= 8; ++n) {
    for (long long k = 0; k <= 1100; ++k) {
      double expected = wn_hat(n, k) + wn_hat(n + 1, k);
      if (n >= 1) expected += wn_hat(n - 1, k);
      CHECK(kernel_hat({n, KernelId::Variant::V}, k) == expected);
    }
  }
}

TEST_CASE("kernel convolution: W_0 * 1 = 1 and W_n vanishes off its support") {
  const FormalSeries one = FormalSeries::monomial(0);
  CHECK(kernel_convolve({0, KernelId::Variant::W}, one).scalar_coeff(0) == cplx(1.0));
  Rng rng(3);
  const FormalSeries f = gaussian_series(rng, 40);
  const FormalSeries g = kernel_convolve({4, KernelId::Variant::W}, f);
  for (std::size_t k = 0; k <= 40; ++k) {
    CHECK(std::abs(g.scalar_coeff(k) - oracle::wn_hat(4, static_cast<long long>(k)) * f.scalar_coeff(k)) < 1e-15);
  }
}

TEST_CASE("sum of all W_n * f reconstructs f") {
  Rng rng(5);
  const FormalSeries f = gaussian_series(rng, 100);
  FormalSeries sum;
  for (unsigned n = 0; n <= 8; ++n) sum = sum + kernel_convolve({n, KernelId::Variant::W}, f);
  for (std::size_t k = 0; k <= 100; ++k) CHECK(std::abs(sum.scalar_coeff(k) - f.scalar_coeff(k)) < 1e-14);
}

TEST_CASE("dense and sparse storage agree") {
  const FormalSeries sparse = FormalSeries::sparse_scalar({{0, 1.0}, {3, cplx(0, 2)}, {17, -1.0}});
  const FormalSeries dense = sparse.to_dense();
  CHECK(dense.degree() == 17);
  CHECK(sparse.degree() == 17);
  for (std::size_t k = 0; k <= 20; ++k) CHECK(dense.scalar_coeff(k) == sparse.scalar_coeff(k));
  const auto gd = evaluate_on_grid(dense, 64);
  const auto gs = evaluate_on_grid(sparse, 64);
  for (std::size_t m = 0; m < 64; ++m) CHECK(std::abs(gd.at(m)(0, 0) - gs.at(m)(0, 0)) < 1e-13);
  CHECK(dense.to_sparse().stored_terms() == 3);
}

TEST_CASE("grid evaluation matches direct summation and refuses aliasing grids") {
  Rng rng(9);
  const FormalSeries f = gaussian_series(rng, 12);
  const auto g = evaluate_on_grid(f, 32);
  for (std::size_t m = 0; m < 32; ++m) {
    cplx v{};
    for (std::size_t k = 0; k <= 12; ++k) v += f.scalar_coeff(k) * std::polar(1.0, 2.0 * std::numbers::pi * double(k * m) / 32.0);
    CHECK(std::abs(g.at(m)(0, 0) - v) < 1e-12);
  }
  CHECK_THROWS_AS(evaluate_on_grid(f, 25), std::invalid_argument);
  CHECK(min_grid_points(12) == 26);
  CHECK(evaluate_on_grid(f, 26).points() == 32);
}

TEST_CASE("coefficientwise maps") {
  const FormalSeries f = FormalSeries::scalar({1.0, 2.0, 3.0});
  const FormalSeries df = f.derivative();
  CHECK(df.scalar_coeff(0) == cplx(2.0));
  CHECK(df.scalar_coeff(1) == cplx(6.0));
  const FormalSeries r = dilate(f, 0.5);
  CHECK(r.scalar_coeff(2) == cplx(0.75));
  const FormalSeries it = i_t(f, 1.0);
  CHECK(it.scalar_coeff(2) == cplx(9.0));
  const FormalSeries round = i_tilde_inverse(i_tilde(f, 0.7), 0.7);
  for (std::size_t k = 0; k <= 2; ++k) CHECK(std::abs(round.scalar_coeff(k) - f.scalar_coeff(k)) < 1e-15);
  const auto lambda = MultiplierSymbol::constant(1, 1, 5.0);
  const FormalSeries m = apply_multiplier(lambda, f);
  CHECK(m.scalar_coeff(0) == cplx(0.0));
  CHECK(m.scalar_coeff(1) == cplx(10.0));
  CHECK(m.scalar_coeff(2) == cplx(0.0));
}

TEST_CASE("tensor with the identity replicates blocks") {
  const FormalSeries f = FormalSeries::scalar({1.0, cplx(0, 1)});
  const FormalSeries t = f.tensor_identity(3);
  CHECK(t.block_dim() == 3);
  CHECK(t.coeff(1).isApprox(cplx(0, 1) * Block::Identity(3, 3)));
}

TEST_CASE("lacunary series") {
  const std::vector<cplx> a{1.0, 2.0, 3.0};
  const FormalSeries phi = lacunary_series(a);
  CHECK(phi.is_sparse());
  CHECK(phi.degree() == 4);
  CHECK(phi.scalar_coeff(1) == cplx(1.0));
  CHECK(phi.scalar_coeff(2) == cplx(2.0));
  CHECK(phi.scalar_coeff(3) == cplx(0.0));
  CHECK(phi.scalar_coeff(4) == cplx(3.0));
  CHECK_THROWS(lacunary_series(std::vector<cplx>{}));
}

TEST_CASE("block series arithmetic") {
  Rng rng(1);
  const FormalSeries a = gaussian_series(rng, 3, 2);
  const FormalSeries b = gaussian_series(rng, 5, 2);
  const FormalSeries s = a + b;
  CHECK(s.degree() == 5);
  CHECK(s.coeff(2).isApprox(a.coeff(2) + b.coeff(2)));
  CHECK(s.coeff(5).isApprox(b.coeff(5)));
  const FormalSeries c = cplx(2.0) * a;
  CHECK(c.coeff(1).isApprox(2.0 * a.coeff(1)));
}

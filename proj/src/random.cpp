#include "hankel_lab/random.hpp"

#include <cmath>

namespace hankel_lab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index) {
  return splitmix64(splitmix64(master ^ fnv1a(name)) + index);
}

cplx complex_gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

std::vector<cplx> complex_gaussian_vector(Rng& rng, std::size_t n) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = complex_gaussian(rng);
  return v;
}

Block complex_gaussian_block(Rng& rng, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Block b(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) b(r, c) = complex_gaussian(rng);
  }
  return b;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

FormalSeries gaussian_series(Rng& rng, std::size_t degree, std::size_t d) {
  std::vector<Block> blocks;
  blocks.reserve(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) blocks.push_back(complex_gaussian_block(rng, d));
  return FormalSeries::from_blocks(blocks);
}

}  // namespace hankel_lab

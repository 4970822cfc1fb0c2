#pragma once

// Seeded random streams and symbol generators. Every random quantity in the
// library is drawn from a stream derived from (master seed, name, index), so
// results do not depend on evaluation order or thread count.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "hankel_lab/series.hpp"

namespace hankel_lab {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);
// splitmix64(splitmix64(master ^ fnv1a(name)) + index).
std::uint64_t derive_seed(std::uint64_t master, std::string_view name, std::uint64_t index);

// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
cplx complex_gaussian(Rng& rng);
std::vector<cplx> complex_gaussian_vector(Rng& rng, std::size_t n);
Block complex_gaussian_block(Rng& rng, std::size_t d);
double uniform(Rng& rng, double lo, double hi);
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);

// Dense series of the given degree with i.i.d. complex Gaussian d x d blocks.
// For d = 1 this draws the same numbers as the scalar case.
FormalSeries gaussian_series(Rng& rng, std::size_t degree, std::size_t d = 1);

}  // namespace hankel_lab

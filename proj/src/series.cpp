#include "hankel_lab/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

#include "hankel_lab/kernels.hpp"

namespace hankel_lab {

// ---------------------------------------------------------------------------
// FormalSeries

FormalSeries::FormalSeries(std::size_t block_dim) : d_(block_dim) {
  if (block_dim == 0) throw std::invalid_argument("FormalSeries: block_dim must be >= 1");
  data_.assign(d_ * d_, cplx{});
}

FormalSeries FormalSeries::scalar(std::vector<cplx> coeffs) {
  FormalSeries f(1);
  if (!coeffs.empty()) f.data_ = std::move(coeffs);
  return f;
}

FormalSeries FormalSeries::from_blocks(const std::vector<Block>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("FormalSeries::from_blocks: no blocks");
  const auto d = static_cast<std::size_t>(blocks.front().rows());
  FormalSeries f(d);
  f.data_.resize(blocks.size() * d * d);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (static_cast<std::size_t>(blocks[k].rows()) != d ||
        static_cast<std::size_t>(blocks[k].cols()) != d) {
      throw std::invalid_argument("FormalSeries::from_blocks: blocks must all be d x d");
    }
    f.stored_block(k) = blocks[k];
  }
  return f;
}

FormalSeries FormalSeries::monomial(std::size_t degree, cplx value) {
  std::vector<cplx> c(degree + 1, cplx{});
  c[degree] = value;
  return scalar(std::move(c));
}

FormalSeries FormalSeries::block_monomial(std::size_t degree, const Block& value) {
  std::vector<Block> blocks(degree + 1, Block::Zero(value.rows(), value.cols()));
  blocks[degree] = value;
  return from_blocks(blocks);
}

FormalSeries FormalSeries::sparse_scalar(const std::vector<std::pair<std::size_t, cplx>>& terms) {
  std::vector<std::pair<std::size_t, Block>> blocks;
  blocks.reserve(terms.size());
  for (const auto& [k, c] : terms) {
    Block b(1, 1);
    b(0, 0) = c;
    blocks.emplace_back(k, std::move(b));
  }
  return sparse_blocks(1, blocks);
}

FormalSeries FormalSeries::sparse_blocks(std::size_t block_dim,
                                         const std::vector<std::pair<std::size_t, Block>>& terms) {
  FormalSeries f(block_dim);
  f.storage_ = Storage::sparse;
  f.data_.clear();
  const std::size_t dd = block_dim * block_dim;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [k, b] = terms[i];
    if (i > 0 && k <= terms[i - 1].first) {
      throw std::invalid_argument("FormalSeries::sparse_blocks: degrees must increase strictly");
    }
    if (static_cast<std::size_t>(b.rows()) != block_dim ||
        static_cast<std::size_t>(b.cols()) != block_dim) {
      throw std::invalid_argument("FormalSeries::sparse_blocks: block dimension mismatch");
    }
    f.degrees_.push_back(k);
    f.data_.insert(f.data_.end(), b.data(), b.data() + dd);
  }
  return f;
}

std::size_t FormalSeries::degree() const {
  if (storage_ == Storage::dense) return data_.size() / (d_ * d_) - 1;
  return degrees_.empty() ? 0 : degrees_.back();
}

std::size_t FormalSeries::stored_terms() const { return data_.size() / (d_ * d_); }

std::size_t FormalSeries::stored_degree(std::size_t i) const {
  return storage_ == Storage::dense ? i : degrees_[i];
}

Eigen::Map<const Block> FormalSeries::stored_block(std::size_t i) const {
  const auto d = static_cast<Eigen::Index>(d_);
  return {data_.data() + i * d_ * d_, d, d};
}

Eigen::Map<Block> FormalSeries::stored_block(std::size_t i) {
  const auto d = static_cast<Eigen::Index>(d_);
  return {data_.data() + i * d_ * d_, d, d};
}

Block FormalSeries::coeff(std::size_t k) const {
  const auto d = static_cast<Eigen::Index>(d_);
  if (storage_ == Storage::dense) {
    if (k >= stored_terms()) return Block::Zero(d, d);
    return stored_block(k);
  }
  const auto it = std::lower_bound(degrees_.begin(), degrees_.end(), k);
  if (it == degrees_.end() || *it != k) return Block::Zero(d, d);
  return stored_block(static_cast<std::size_t>(it - degrees_.begin()));
}

cplx FormalSeries::scalar_coeff(std::size_t k) const {
  if (d_ != 1) throw std::invalid_argument("scalar_coeff: series is block-valued");
  if (storage_ == Storage::dense) return k < data_.size() ? data_[k] : cplx{};
  const auto it = std::lower_bound(degrees_.begin(), degrees_.end(), k);
  if (it == degrees_.end() || *it != k) return {};
  return data_[static_cast<std::size_t>(it - degrees_.begin())];
}

bool FormalSeries::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](cplx c) { return c == cplx{}; });
}

FormalSeries FormalSeries::to_dense() const {
  if (storage_ == Storage::dense) return *this;
  FormalSeries out(d_);
  const std::size_t dd = d_ * d_;
  out.data_.assign((degree() + 1) * dd, cplx{});
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(i * dd), dd,
                out.data_.begin() + static_cast<std::ptrdiff_t>(degrees_[i] * dd));
  }
  return out;
}

FormalSeries FormalSeries::to_sparse() const {
  std::vector<std::pair<std::size_t, Block>> terms;
  for (std::size_t i = 0; i < stored_terms(); ++i) {
    const auto b = stored_block(i);
    if (!b.isZero(0.0)) terms.emplace_back(stored_degree(i), Block(b));
  }
  return sparse_blocks(d_, terms);
}

FormalSeries FormalSeries::trimmed() const {
  if (storage_ == Storage::sparse) return to_sparse();
  std::size_t n = stored_terms();
  while (n > 1 && stored_block(n - 1).isZero(0.0)) --n;
  FormalSeries out = *this;
  out.data_.resize(n * d_ * d_);
  return out;
}

FormalSeries FormalSeries::derivative() const {
  const std::size_t dd = d_ * d_;
  if (storage_ == Storage::dense) {
    FormalSeries out(d_);
    const std::size_t n = stored_terms();
    if (n <= 1) return out;
    out.data_.assign((n - 1) * dd, cplx{});
    for (std::size_t k = 1; k < n; ++k) {
      out.stored_block(k - 1) = static_cast<double>(k) * stored_block(k);
    }
    return out;
  }
  std::vector<std::pair<std::size_t, Block>> terms;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (degrees_[i] == 0) continue;
    terms.emplace_back(degrees_[i] - 1, static_cast<double>(degrees_[i]) * stored_block(i));
  }
  return sparse_blocks(d_, terms);
}

FormalSeries FormalSeries::tensor_identity(std::size_t d) const {
  if (d_ != 1) throw std::invalid_argument("tensor_identity: series must be scalar");
  const auto id = Block::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  std::vector<std::pair<std::size_t, Block>> terms;
  terms.reserve(stored_terms());
  for (std::size_t i = 0; i < stored_terms(); ++i) {
    terms.emplace_back(stored_degree(i), data_[i] * id);
  }
  if (storage_ == Storage::sparse) return sparse_blocks(d, terms);
  std::vector<Block> blocks;
  blocks.reserve(terms.size());
  for (auto& t : terms) blocks.push_back(std::move(t.second));
  return from_blocks(blocks);
}

FormalSeries& FormalSeries::operator*=(cplx c) {
  for (auto& x : data_) x *= c;
  return *this;
}

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
  if (a.block_dim() != b.block_dim()) {
    throw std::invalid_argument("FormalSeries +: block dimension mismatch");
  }
  if (a.is_sparse() && b.is_sparse()) {
    std::vector<std::pair<std::size_t, Block>> terms;
    std::size_t i = 0, j = 0;
    while (i < a.stored_terms() || j < b.stored_terms()) {
      const bool take_a = j >= b.stored_terms() ||
                          (i < a.stored_terms() && a.stored_degree(i) < b.stored_degree(j));
      const bool take_b = i >= a.stored_terms() ||
                          (j < b.stored_terms() && b.stored_degree(j) < a.stored_degree(i));
      if (take_a) {
        terms.emplace_back(a.stored_degree(i), Block(a.stored_block(i)));
        ++i;
      } else if (take_b) {
        terms.emplace_back(b.stored_degree(j), Block(b.stored_block(j)));
        ++j;
      } else {
        terms.emplace_back(a.stored_degree(i), a.stored_block(i) + b.stored_block(j));
        ++i;
        ++j;
      }
    }
    return FormalSeries::sparse_blocks(a.block_dim(), terms);
  }
  FormalSeries da = a.to_dense();
  const FormalSeries db = b.to_dense();
  if (db.stored_terms() > da.stored_terms()) {
    da.data_.resize(db.data_.size(), cplx{});
  }
  for (std::size_t i = 0; i < db.data_.size(); ++i) da.data_[i] += db.data_[i];
  return da;
}

// ---------------------------------------------------------------------------
// MultiplierSymbol

MultiplierSymbol::MultiplierSymbol(std::int64_t first, std::vector<cplx> values)
    : first_(first), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("MultiplierSymbol: empty window");
}

cplx MultiplierSymbol::operator()(std::int64_t k) const {
  if (k < first_ || k > last()) return {};
  return values_[static_cast<std::size_t>(k - first_)];
}

MultiplierSymbol MultiplierSymbol::constant(std::int64_t first, std::int64_t last, cplx value) {
  if (last < first) throw std::invalid_argument("MultiplierSymbol: last < first");
  return {first, std::vector<cplx>(static_cast<std::size_t>(last - first + 1), value)};
}

MultiplierSymbol MultiplierSymbol::dyadic_kernel(unsigned n) {
  const auto [lo, hi] = kernel_support({n, KernelId::Variant::W});
  std::vector<cplx> v;
  for (auto k = lo; k <= hi; ++k) v.emplace_back(wn_hat(n, k));
  return {lo, std::move(v)};
}

// ---------------------------------------------------------------------------
// D_n^alpha, kernels

double dn(std::size_t n, double alpha) {
  if (n > 64 && alpha > -1.0) {
    double log_sum = 0.0;
    for (std::size_t j = 1; j <= n; ++j) log_sum += std::log1p(alpha / static_cast<double>(j));
    return std::exp(log_sum);
  }
  double prod = 1.0;
  for (std::size_t j = 1; j <= n; ++j) prod *= 1.0 + alpha / static_cast<double>(j);
  return prod;
}

double wn_hat(unsigned n, std::int64_t k) {
  if (n == 0) return (k == 0 || k == 1) ? 1.0 : 0.0;
  if (n > 61) throw std::out_of_range("wn_hat: kernel index too large");
  const std::int64_t lo = std::int64_t{1} << (n - 1);
  const std::int64_t mid = lo << 1;
  const std::int64_t hi = mid << 1;
  if (k < lo || k > hi) return 0.0;
  if (k <= mid) return std::ldexp(static_cast<double>(k - lo), -static_cast<int>(n) + 1);
  return std::ldexp(static_cast<double>(hi - k), -static_cast<int>(n));
}

double kernel_hat(KernelId id, std::int64_t k) {
  if (id.variant == KernelId::Variant::W) return wn_hat(id.n, k);
  double v = wn_hat(id.n, k) + wn_hat(id.n + 1, k);
  if (id.n >= 1) v += wn_hat(id.n - 1, k);
  return v;
}

std::pair<std::int64_t, std::int64_t> kernel_support(KernelId id) {
  auto w_support = [](unsigned n) -> std::pair<std::int64_t, std::int64_t> {
    if (n == 0) return {0, 1};
    return {std::int64_t{1} << (n - 1), std::int64_t{1} << (n + 1)};
  };
  if (id.variant == KernelId::Variant::W) return w_support(id.n);
  const auto lo = w_support(id.n == 0 ? 0 : id.n - 1).first;
  const auto hi = w_support(id.n + 1).second;
  return {lo, hi};
}

FormalSeries kernel_convolve(KernelId id, const FormalSeries& f) {
  return f.scaled_by_degree(
      [id](std::size_t k) { return cplx(kernel_hat(id, static_cast<std::int64_t>(k))); });
}

CheckReport partition_of_unity_check(std::int64_t k_max) {
  if (k_max < 0) throw std::invalid_argument("partition_of_unity_check: k_max < 0");
  double worst = 0.0;
  std::int64_t worst_k = 0;
  for (std::int64_t k = 0; k <= k_max; ++k) {
    double sum = 0.0;
    for (unsigned n = 0; n <= 62; ++n) {
      if (n >= 1 && (std::int64_t{1} << (n - 1)) > k) break;
      sum += wn_hat(n, k);
    }
    const double dev = std::abs(sum - 1.0);
    if (dev > worst) {
      worst = dev;
      worst_k = k;
    }
  }
  nlohmann::ordered_json params{{"k_max", k_max}, {"worst_k", worst_k}};
  return CheckReport::identity("partition_of_unity", params, worst, 0.0, 1e-14,
                               "max_k |sum_n W^_n(k) - 1|");
}

FormalSeries apply_multiplier(const MultiplierSymbol& lambda, const FormalSeries& f) {
  return f.scaled_by_degree([&lambda](std::size_t k) { return lambda(static_cast<std::int64_t>(k)); });
}

FormalSeries i_t(const FormalSeries& f, double t) {
  return f.scaled_by_degree(
      [t](std::size_t k) { return cplx(std::pow(1.0 + static_cast<double>(k), t)); });
}

FormalSeries i_tilde(const FormalSeries& f, double t) {
  return f.scaled_by_degree([t](std::size_t k) { return cplx(dn(k, t)); });
}

FormalSeries i_tilde_inverse(const FormalSeries& f, double t) {
  return f.scaled_by_degree([t](std::size_t k) { return cplx(1.0 / dn(k, t)); });
}

FormalSeries dilate(const FormalSeries& f, double r) {
  return f.scaled_by_degree([r](std::size_t k) { return cplx(std::pow(r, static_cast<double>(k))); });
}

// ---------------------------------------------------------------------------
// Grid evaluation

GridValues::GridValues(std::size_t points, std::size_t block_dim)
    : points_(points), d_(block_dim), data_(points * block_dim * block_dim) {}

Eigen::Map<const Block> GridValues::at(std::size_t m) const {
  const auto d = static_cast<Eigen::Index>(d_);
  return {data_.data() + m * d_ * d_, d, d};
}

Eigen::Map<Block> GridValues::at(std::size_t m) {
  const auto d = static_cast<Eigen::Index>(d_);
  return {data_.data() + m * d_ * d_, d, d};
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::size_t min_grid_points(std::size_t degree) { return 2 * (degree + 1); }

GridValues evaluate_on_grid(const FormalSeries& f, std::size_t M) {
  const std::size_t required = min_grid_points(f.degree());
  if (M < required) {
    throw std::invalid_argument("evaluate_on_grid: grid of " + std::to_string(M) +
                                " points is too small; need at least " + std::to_string(required));
  }
  M = next_pow2(M);
  const std::size_t d = f.block_dim();
  const std::size_t dd = d * d;
  GridValues out(M, d);

  if (f.is_sparse()) {
    std::vector<std::size_t> degrees(f.stored_terms());
    for (std::size_t i = 0; i < degrees.size(); ++i) degrees[i] = f.stored_degree(i);
    kernels::sparse_synthesis_parallel(degrees, f.raw(), dd, M, out.raw());
    return out;
  }

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<cplx> in(M), spectrum(M);
  const auto coeffs = f.raw();
  const std::size_t terms = f.stored_terms();
  const auto dst = out.raw();
  for (std::size_t e = 0; e < dd; ++e) {
    std::fill(in.begin(), in.end(), cplx{});
    for (std::size_t k = 0; k < terms; ++k) in[k] = coeffs[k * dd + e];
    // Eigen's inverse transform uses exp(+2 pi i k m / M).
    fft.inv(spectrum, in);
    for (std::size_t m = 0; m < M; ++m) dst[m * dd + e] = spectrum[m];
  }
  return out;
}

FormalSeries lacunary_series(std::span<const cplx> a, FormalSeries::Storage storage) {
  if (a.empty()) throw std::invalid_argument("lacunary_series: empty coefficient list");
  if (a.size() > 62) throw std::out_of_range("lacunary_series: degree 2^n overflows");
  std::vector<std::pair<std::size_t, cplx>> terms;
  for (std::size_t k = 0; k < a.size(); ++k) terms.emplace_back(std::size_t{1} << k, a[k]);
  auto f = FormalSeries::sparse_scalar(terms);
  return storage == FormalSeries::Storage::dense ? f.to_dense() : f;
}

}  // namespace hankel_lab

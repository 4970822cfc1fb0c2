#include "hankel_lab/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "hankel_lab/checks.hpp"
#include "hankel_lab/kernels.hpp"
#include "hankel_lab/norms.hpp"

#ifndef HANKEL_LAB_VERSION
#define HANKEL_LAB_VERSION "0.1.0"
#endif

namespace hankel_lab {

namespace {

using json = nlohmann::ordered_json;

json p_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

// Runs body(i) for i in [0, n) on `jobs` threads. Exceptions are collected and
// the first one (by index) is rethrown after the loop.
template <typename Body>
void parallel_cells(std::size_t n, int jobs, Body body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
  const int threads = std::max(1, jobs);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

json provenance(const ExperimentConfig& cfg, const RunOptions& opt) {
  json p{{"version", version_string()}, {"seed", cfg.seed}, {"config", to_json(cfg)}};
  if (opt.only) p["only"] = *opt.only;
  if (opt.only_index) p["only_index"] = *opt.only_index;
  return p;
}

PointwiseNorm pointwise_for(std::size_t d, double p) {
  return d == 1 ? PointwiseNorm::absolute() : PointwiseNorm::schatten(p);
}

double besov_exponent(double p, double alpha, double beta) {
  return (std::isinf(p) ? 0.0 : 1.0 / p) + alpha + beta;
}

double schatten_from(const Eigen::VectorXd& sv, double p) {
  return kernels::lp_combine({sv.data(), static_cast<std::size_t>(sv.size())}, p);
}

// Least-squares slope of log y against log x over finite, positive pairs.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isfinite(x[i]) && x[i] > 0.0 && y[i] > 0.0) pts.emplace_back(std::log(x[i]), std::log(y[i]));
  }
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (auto [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto [a, b] : pts) {
    sxy += (a - mx) * (b - my);
    sxx += (a - mx) * (a - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

json finite_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

// Ratios rho(p) for one symbol; the SVD is shared across the p grid.
std::vector<std::array<double, 3>> symbol_ratios(const FormalSeries& f, const ExperimentConfig& cfg) {
  const Eigen::VectorXd sv = singular_values(hankel_matrix(f, cfg.alpha, cfg.beta, cfg.m));
  const GridSpec grid = GridSpec::for_degree(f.degree());
  std::vector<std::array<double, 3>> out;
  for (double p : cfg.p_grid) {
    const double s = schatten_from(sv, p);
    const double b = besov_norm(f, {p, p, besov_exponent(p, cfg.alpha, cfg.beta)},
                                pointwise_for(f.block_dim(), p), grid);
    out.push_back({s, b, b > 0.0 ? s / b : 0.0});
  }
  return out;
}

// Dual element of A in S^p: U (S / ||S||_p)^{p-1} V*, together with ||A||_p.
std::pair<Eigen::MatrixXcd, double> schatten_dual(const Eigen::MatrixXcd& a, double p) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double norm = schatten_from(s, p);
  if (norm == 0.0) return {Eigen::MatrixXcd::Zero(a.rows(), a.cols()), 0.0};
  Eigen::VectorXd w(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) w(i) = std::pow(s(i) / norm, p - 1.0);
  return {svd.matrixU() * w.asDiagonal() * svd.matrixV().adjoint(), norm};
}

double conjugate_exponent(double p) { return p / (p - 1.0); }

}  // namespace

std::string version_string() { return fmt::format("hankel-lab {}", HANKEL_LAB_VERSION); }

FormalSeries make_symbol(SymbolFamily family, Rng& rng, std::size_t degree, std::size_t d) {
  const Block id = Block::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  switch (family) {
    case SymbolFamily::gaussian:
      return gaussian_series(rng, degree, d);
    case SymbolFamily::monomial:
      return FormalSeries::block_monomial(degree, id).to_dense();
    case SymbolFamily::constant:
      return FormalSeries::block_monomial(0, id).to_dense();
    case SymbolFamily::lacunary: {
      std::vector<std::pair<std::size_t, Block>> terms;
      for (std::size_t k = 1; k <= degree && k != 0; k <<= 1) terms.emplace_back(k, id);
      if (terms.empty()) return FormalSeries(d);
      return FormalSeries::sparse_blocks(d, terms).to_dense();
    }
  }
  throw std::invalid_argument("make_symbol: unknown family");
}

ExperimentResult run_ratio_sweep(const ExperimentConfig& cfg, const RunOptions& opt) {
  cfg.validate();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<std::vector<std::array<double, 3>>> cells(trials);
  parallel_cells(trials, opt.jobs, [&](std::size_t t) {
    Rng rng(derive_seed(cfg.seed, "symbol", t));
    cells[t] = symbol_ratios(make_symbol(cfg.family, rng, cfg.degree, cfg.block_dim), cfg);
  });

  ExperimentResult r;
  r.columns = {"p", "trial", "schatten", "besov", "rho"};
  json per_p = json::array();
  std::vector<double> ps, maxima;
  for (std::size_t i = 0; i < cfg.p_grid.size(); ++i) {
    const double p = cfg.p_grid[i];
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto& c = cells[t][i];
      r.rows.push_back({p, static_cast<std::int64_t>(t), c[0], c[1], c[2]});
      lo = std::min(lo, c[2]);
      hi = std::max(hi, c[2]);
    }
    per_p.push_back({{"p", p_json(p)}, {"min_rho", lo}, {"max_rho", hi}});
    ps.push_back(p);
    maxima.push_back(hi);
    r.plot.push_back({"max_rho", p, hi, std::isinf(p) ? 0.0 : std::sqrt(p)});
  }
  r.summary = {{"experiment", "ratio_sweep"},
               {"rows", r.rows.size()},
               {"per_p", per_p},
               {"loglog_slope_max_rho", finite_or_null(loglog_slope(ps, maxima))}};
  r.provenance = provenance(cfg, opt);
  return r;
}

ExperimentResult run_lacunary_growth(const ExperimentConfig& cfg, const RunOptions& opt) {
  cfg.validate();
  struct Row {
    std::size_t n = 0, m = 0;
    double estimate = 0.0, besov = 0.0;
    int iterations = 0;
  };
  std::vector<Row> cells(cfg.p_grid.size());
  parallel_cells(cells.size(), opt.jobs, [&](std::size_t i) {
    const double p = cfg.p_grid[i];
    Row& row = cells[i];
    row.n = static_cast<std::size_t>(std::floor(p));
    row.m = (std::size_t{1} << row.n) + 1;
    const std::vector<cplx> ones(row.n + 1, 1.0);
    const FormalSeries phi = lacunary_series(ones);
    const auto c = hankel_coefficients(phi, row.m);
    const auto power = operator_norm_power(hankel_fft_operator(c, row.m), 400, 1e-10,
                                           derive_seed(cfg.seed, "lacunary", i));
    row.estimate = power.estimate;
    row.iterations = power.iterations;
    row.besov = besov_norm(phi, {p, p, 1.0 / p}, PointwiseNorm::absolute(),
                           GridSpec::for_degree(phi.degree()));
  });

  ExperimentResult r;
  r.columns = {"p", "n", "m", "op_norm_estimate", "besov", "lower_bound", "paley_bound",
               "sqrt_p", "lower_over_sqrt_p", "iterations"};
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double p = cfg.p_grid[i];
    const Row& c = cells[i];
    const double lower = c.estimate / c.besov;
    const double paley = std::sqrt(static_cast<double>(c.n + 1)) / (3.0 * c.besov);
    const double sp = std::sqrt(p);
    worst = std::min(worst, lower / sp);
    r.rows.push_back({p, static_cast<std::int64_t>(c.n), static_cast<std::int64_t>(c.m), c.estimate,
                      c.besov, lower, paley, sp, lower / sp, static_cast<std::int64_t>(c.iterations)});
    r.plot.push_back({"lower_bound", p, lower, sp / 12.0});
  }
  r.summary = {{"experiment", "lacunary_growth"},
               {"rows", r.rows.size()},
               {"min_lower_over_sqrt_p", worst}};
  r.provenance = provenance(cfg, opt);
  return r;
}

AscentResult projection_ascent(const BlockMatrix& start, double p, int iterations, double rel_tol) {
  if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("projection_ascent: need 1 < p < inf");
  const std::size_t m = start.m();
  const std::size_t d = start.d();
  const double q = conjugate_exponent(p);
  AscentResult result;
  const double n0 = schatten_norm(start, p);
  if (n0 == 0.0) return result;
  Eigen::MatrixXcd a = start.dense() / n0;
  double previous = 0.0;
  for (int it = 1; it <= iterations; ++it) {
    const BlockMatrix input(a, d);
    const BlockMatrix image = p_hank_padded(input);
    auto [g, image_norm] = schatten_dual(image.dense(), p);
    // Divide by the measured input norm rather than assuming it is exactly 1.
    const double ratio = image_norm / schatten_norm(input, p);
    result.iterations = it;
    result.estimate = std::max(result.estimate, ratio);
    if (ratio == 0.0) break;
    if (it > 1 && ratio - previous <= rel_tol * previous) break;
    previous = std::max(previous, ratio);
    // Pull the dual back through the adjoint and take its dual in S^p: a unit
    // S^p element aligned with P*(g).
    const BlockMatrix pulled = p_hank_padded_adjoint(BlockMatrix(std::move(g), d), m);
    auto [next, pulled_norm] = schatten_dual(pulled.dense(), q);
    if (pulled_norm == 0.0) break;
    a = std::move(next);
  }
  return result;
}

ExperimentResult run_projection_norm(const ExperimentConfig& cfg, const RunOptions& opt) {
  cfg.validate();
  const std::size_t starts = static_cast<std::size_t>(cfg.multistarts);
  const std::size_t cells_n = cfg.p_grid.size() * starts;
  std::vector<AscentResult> cells(cells_n);
  std::vector<std::string> kinds(cells_n);
  parallel_cells(cells_n, opt.jobs, [&](std::size_t i) {
    const double p = cfg.p_grid[i / starts];
    const std::size_t s = i % starts;
    Rng rng(derive_seed(cfg.seed, "projection_start", i));
    const std::size_t m = cfg.m;
    BlockMatrix start(m, 1);
    if (s == 0) {
      // Hankel input whose antidiagonals all fit in the window: ratio exactly 1.
      kinds[i] = "hankel";
      start = hankel_matrix(gaussian_series(rng, m - 1), 0.0, 0.0, m);
    } else if (s % 2 == 1) {
      kinds[i] = "gaussian";
      for (Eigen::Index c = 0; c < start.dense().cols(); ++c) {
        for (Eigen::Index r = 0; r < start.dense().rows(); ++r) start.dense()(r, c) = complex_gaussian(rng);
      }
    } else {
      kinds[i] = "antidiagonal";
      const auto n = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(2 * m - 2)));
      for (std::size_t j = 0; j < m; ++j) {
        if (n >= j && n - j < m) {
          start.dense()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(n - j)) = complex_gaussian(rng);
        }
      }
    }
    cells[i] = projection_ascent(start, p, cfg.iterations);
  });

  ExperimentResult r;
  r.columns = {"p", "start", "start_kind", "estimate", "iterations", "best_so_far", "reference"};
  json per_p = json::array();
  for (std::size_t pi = 0; pi < cfg.p_grid.size(); ++pi) {
    const double p = cfg.p_grid[pi];
    const double reference = std::sqrt(p * p / (p - 1.0));
    double best = 0.0;
    for (std::size_t s = 0; s < starts; ++s) {
      const auto& c = cells[pi * starts + s];
      best = std::max(best, c.estimate);
      r.rows.push_back({p, static_cast<std::int64_t>(s), kinds[pi * starts + s], c.estimate,
                        static_cast<std::int64_t>(c.iterations), best, reference});
    }
    per_p.push_back({{"p", p}, {"estimate", best}, {"reference", reference}});
    r.plot.push_back({"estimate", p, best, reference});
  }
  r.summary = {{"experiment", "projection_norm"},
               {"rows", r.rows.size()},
               {"m", cfg.m},
               {"start_families", "hankel, gaussian, antidiagonal"},
               {"per_p", per_p},
               {"note", "estimates are lower bounds on the operator norm"}};
  r.provenance = provenance(cfg, opt);
  return r;
}

ExperimentResult run_block_sweep(const ExperimentConfig& cfg, const RunOptions& opt) {
  cfg.validate();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t dims = cfg.block_dims.size();
  // cell (di, t) -> per-p (rho_random, rho_tensor)
  std::vector<std::vector<std::pair<double, double>>> cells(dims * trials);
  parallel_cells(cells.size(), opt.jobs, [&](std::size_t i) {
    const std::size_t d = cfg.block_dims[i / trials];
    const std::size_t t = i % trials;
    Rng block_rng(derive_seed(cfg.seed, "symbol", t));
    const auto random = symbol_ratios(make_symbol(cfg.family, block_rng, cfg.degree, d), cfg);
    Rng scalar_rng(derive_seed(cfg.seed, "symbol", t));
    const FormalSeries scalar = make_symbol(cfg.family, scalar_rng, cfg.degree, 1);
    const auto tensor = symbol_ratios(scalar.tensor_identity(d), cfg);
    auto& out = cells[i];
    for (std::size_t k = 0; k < cfg.p_grid.size(); ++k) out.emplace_back(random[k][2], tensor[k][2]);
  });

  ExperimentResult r;
  r.columns = {"d", "p", "trial", "rho_random", "rho_tensor"};
  json per_cell = json::array();
  double tensor_dev = 0.0;
  bool envelope_ok = true;
  for (std::size_t k = 0; k < cfg.p_grid.size(); ++k) {
    const double p = cfg.p_grid[k];
    // Scalar envelope: rho of the scalar symbols, read from the tensor column
    // (rho of f (x) I_d equals rho of f).
    double s_lo = std::numeric_limits<double>::infinity(), s_hi = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const double rho = cells[t][k].second;
      s_lo = std::min(s_lo, rho);
      s_hi = std::max(s_hi, rho);
    }
    for (std::size_t di = 0; di < dims; ++di) {
      const std::size_t d = cfg.block_dims[di];
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (std::size_t t = 0; t < trials; ++t) {
        const auto [rho_random, rho_tensor] = cells[di * trials + t][k];
        r.rows.push_back({static_cast<std::int64_t>(d), p, static_cast<std::int64_t>(t), rho_random, rho_tensor});
        lo = std::min(lo, rho_random);
        hi = std::max(hi, rho_random);
        tensor_dev = std::max(tensor_dev, std::abs(rho_tensor - cells[t][k].second) / cells[t][k].second);
      }
      const bool inside = lo >= s_lo / 4.0 && hi <= s_hi * 4.0;
      envelope_ok = envelope_ok && inside;
      per_cell.push_back({{"d", d}, {"p", p_json(p)}, {"min_rho", lo}, {"max_rho", hi},
                          {"scalar_min_rho", s_lo}, {"scalar_max_rho", s_hi}, {"within_4x", inside}});
      r.plot.push_back({fmt::format("max_rho_d{}", d), p, hi, std::isinf(p) ? 0.0 : std::sqrt(p)});
    }
  }
  r.summary = {{"experiment", "block_sweep"},
               {"rows", r.rows.size()},
               {"per_cell", per_cell},
               {"max_tensor_relative_deviation", tensor_dev},
               {"random_within_scalar_envelope_4x", envelope_ok}};
  r.provenance = provenance(cfg, opt);
  return r;
}

ExperimentResult run_check_suite(const ExperimentConfig& cfg, const RunOptions& opt) {
  cfg.validate();
  SuiteOptions so;
  so.seed = cfg.seed;
  so.trials = cfg.trials;
  so.tolerance_scale = cfg.tolerance_scale;
  so.paley_max_n = cfg.paley_max_n;
  std::vector<SuiteEntry> suite;
  for (auto& e : build_check_suite(so)) {
    if (opt.only && e.name != *opt.only) continue;
    if (opt.only_index && e.index != *opt.only_index) continue;
    suite.push_back(std::move(e));
  }

  ExperimentResult r;
  r.reports.resize(suite.size());
  parallel_cells(suite.size(), opt.jobs, [&](std::size_t i) {
    const auto& e = suite[i];
    try {
      r.reports[i] = e.run(derive_seed(cfg.seed, e.name, e.index));
    } catch (const std::exception& ex) {
      CheckReport failed;
      failed.name = e.name;
      failed.params = {{"suite_index", e.index}, {"seed", std::to_string(cfg.seed)}};
      failed.measured = std::numeric_limits<double>::quiet_NaN();
      failed.notes = fmt::format("error: {}", ex.what());
      failed.pass = false;
      r.reports[i] = failed;
    }
  });

  r.columns = {"name", "index", "kind", "pass", "measured", "bound", "ratio", "tolerance", "params", "notes"};
  std::map<std::string, std::pair<int, int>> tally;  // name -> (passed, total)
  json failures = json::array();
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto& rep = r.reports[i];
    r.rows.push_back({rep.name, static_cast<std::int64_t>(suite[i].index),
                      std::string(rep.kind == CheckReport::Kind::identity ? "identity" : "inequality"),
                      std::string(rep.pass ? "true" : "false"), rep.measured, rep.bound, rep.ratio,
                      rep.tolerance, rep.params.dump(), rep.notes});
    auto& [ok, total] = tally[rep.name];
    ++total;
    if (rep.pass) {
      ++ok;
    } else {
      r.passed = false;
      failures.push_back({{"name", rep.name}, {"index", suite[i].index}, {"measured", finite_or_null(rep.measured)},
                          {"bound", rep.bound}, {"notes", rep.notes}});
    }
    r.plot.push_back({rep.name, static_cast<double>(suite[i].index), rep.ratio, 1.0});
  }
  if (suite.empty()) r.warnings.push_back("check suite is empty (trials = 0 or filter matched nothing)");
  json families = json::object();
  for (const auto& [name, counts] : tally) {
    families[name] = {{"passed", counts.first}, {"total", counts.second}};
  }
  r.summary = {{"experiment", "check_suite"},
               {"rows", r.rows.size()},
               {"all_passed", r.passed},
               {"families", families},
               {"failures", failures}};
  r.provenance = provenance(cfg, opt);
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
  switch (cfg.experiment) {
    case ExperimentKind::ratio_sweep: return run_ratio_sweep(cfg, opt);
    case ExperimentKind::projection_norm: return run_projection_norm(cfg, opt);
    case ExperimentKind::lacunary_growth: return run_lacunary_growth(cfg, opt);
    case ExperimentKind::block_sweep: return run_block_sweep(cfg, opt);
    case ExperimentKind::check_suite: return run_check_suite(cfg, opt);
  }
  throw std::invalid_argument("run_experiment: unknown experiment");
}

std::string format_cell(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return fmt::format("{:.17g}", *d);
  const auto& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string to_csv(const ExperimentResult& result) {
  std::string out;
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += result.columns[i];
  }
  out += '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string plot_csv(const ExperimentResult& result) {
  std::string out = "series,x,y,reference\n";
  for (const auto& pt : result.plot) {
    out += fmt::format("{},{:.17g},{:.17g},{:.17g}\n", format_cell(pt.series), pt.x, pt.y, pt.reference);
  }
  return out;
}

json summary_json(const ExperimentResult& result) {
  json warnings = json::array();
  for (const auto& w : result.warnings) warnings.push_back(w);
  return {{"columns", result.columns},
          {"summary", result.summary},
          {"passed", result.passed},
          {"warnings", warnings},
          {"provenance", result.provenance}};
}

void write_outputs(const ExperimentResult& result, const std::string& path, bool emit_plot_data) {
  namespace fs = std::filesystem;
  const fs::path out(path);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  auto write = [](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error(fmt::format("cannot write {}", p.string()));
    f << text;
  };
  write(out, to_csv(result));
  fs::path sidecar = out;
  sidecar.replace_extension(".json");
  write(sidecar, summary_json(result).dump(2) + "\n");
  if (emit_plot_data) {
    fs::path plot = out;
    plot.replace_extension(".plot.csv");
    write(plot, plot_csv(result));
  }
}

}  // namespace hankel_lab

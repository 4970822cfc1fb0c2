#pragma once

// Config-driven experiment runners and their CSV / JSON / plot-data writers.
//
// Each experiment splits into independent cells that run on a bounded OpenMP
// worker pool. A cell draws its randomness from a stream derived from
// (seed, name, index) and writes its rows into a fixed slot, so the emitted
// CSV is byte-identical for any number of jobs.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hankel_lab/config.hpp"
#include "hankel_lab/hankel.hpp"
#include "hankel_lab/random.hpp"
#include "hankel_lab/report.hpp"

namespace hankel_lab {

using Cell = std::variant<std::int64_t, double, std::string>;

// One (x, y, reference-curve) triplet of a named series.
struct PlotPoint {
  std::string series;
  double x = 0.0;
  double y = 0.0;
  double reference = 0.0;
};

struct ExperimentResult {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
  std::vector<PlotPoint> plot;
  std::vector<CheckReport> reports;  // check_suite only
  std::vector<std::string> warnings;
  bool passed = true;
};

struct RunOptions {
  int jobs = 1;
  std::optional<std::string> only;         // check_suite: run a single check family
  std::optional<std::size_t> only_index;   // check_suite: and a single instance
};

std::string version_string();

// Symbol of the given family. gaussian: i.i.d. complex Gaussian blocks up to
// `degree`; monomial: z^degree; lacunary: sum_{2^k <= degree} z^{2^k};
// constant: 1. Non-scalar families use identity blocks.
FormalSeries make_symbol(SymbolFamily family, Rng& rng, std::size_t degree, std::size_t d);

// rho(p) = ||Gamma^{alpha,beta}_f||_{S^p} / ||f||_{B_p^{1/p+alpha+beta}} per (p, trial).
// Columns: p, trial, schatten, besov, rho.
ExperimentResult run_ratio_sweep(const ExperimentConfig& cfg, const RunOptions& opt = {});

// Certified lower bounds for a = all-ones with n = floor(p). One row per p.
// Columns: p, n, m, op_norm_estimate, besov, lower_bound, paley_bound, sqrt_p,
// lower_over_sqrt_p, iterations.
ExperimentResult run_lacunary_growth(const ExperimentConfig& cfg, const RunOptions& opt = {});

struct AscentResult {
  double estimate = 0.0;  // best ||P(A)||_p / ||A||_p seen
  int iterations = 0;
};

// Best ratio ||p_hank_padded(A)||_p / ||A||_p from a dual-power ascent started at `start`.
AscentResult projection_ascent(const BlockMatrix& start, double p, int iterations,
                               double rel_tol = 1e-6);

// Lower bounds on ||P_Hank||_{S^p -> S^p} from multi-start ascent. One row per
// (p, start). Columns: p, start, start_kind, estimate, iterations, best_so_far, reference.
ExperimentResult run_projection_norm(const ExperimentConfig& cfg, const RunOptions& opt = {});

// ratio_sweep with d x d block coefficients, for each d in block_dims: a random
// block symbol and the scalar symbol tensored with I_d.
// Columns: d, p, trial, rho_random, rho_tensor.
ExperimentResult run_block_sweep(const ExperimentConfig& cfg, const RunOptions& opt = {});

// Every check of the suite registry. One row per report.
// Columns: name, index, kind, pass, measured, bound, ratio, tolerance, params, notes.
ExperimentResult run_check_suite(const ExperimentConfig& cfg, const RunOptions& opt = {});

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opt = {});

std::string format_cell(const Cell& cell);
std::string to_csv(const ExperimentResult& result);
std::string plot_csv(const ExperimentResult& result);
nlohmann::ordered_json summary_json(const ExperimentResult& result);

// Writes the CSV to `path`, the JSON summary next to it (extension .json) and,
// when requested, plot data as <stem>.plot.csv.
void write_outputs(const ExperimentResult& result, const std::string& path, bool emit_plot_data);

}  // namespace hankel_lab

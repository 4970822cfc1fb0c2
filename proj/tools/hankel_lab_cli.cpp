// hankel-lab: command-line runner for the Hankel/Besov experiments.
//
// Exit status: 0 = success, 1 = a check failed, 2 = configuration error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hankel_lab/config.hpp"
#include "hankel_lab/experiments.hpp"

namespace {

using namespace hankel_lab;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  int jobs = 1;
  bool emit_plot_data = false;
  std::string only;
  std::optional<std::size_t> index;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--config", o.config_path, "Config file (.json, or key = value text)")
      ->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "Master seed (overrides the config)");
  sub->add_option("--out", o.out, "Output CSV path (JSON summary is written alongside)");
  sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--emit-plot-data", o.emit_plot_data, "Also write <stem>.plot.csv");
}

int run(ExperimentKind kind, const CommonOptions& o) {
  ExperimentConfig cfg = o.config_path.empty() ? default_config(kind) : load_config(o.config_path, kind);
  if (o.seed) cfg.seed = *o.seed;
  cfg.validate(o.config_path.empty() ? "defaults" : o.config_path);

  RunOptions ro;
  ro.jobs = o.jobs;
  if (!o.only.empty()) ro.only = o.only;
  ro.only_index = o.index;

  const ExperimentResult result = run_experiment(cfg, ro);
  std::string out = o.out.empty() ? cfg.output_path : o.out;
  if (out.empty()) out = fmt::format("{}.csv", to_string(kind));
  write_outputs(result, out, o.emit_plot_data);

  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << fmt::format("{}: {} rows -> {}\n", to_string(kind), result.rows.size(), out);
  if (kind == ExperimentKind::check_suite) {
    std::size_t failed = 0;
    for (const auto& r : result.reports) {
      if (r.pass) continue;
      ++failed;
      const auto repro = r.params.contains("repro") ? r.params["repro"].get<std::string>() : "";
      std::cout << fmt::format("FAIL {} measured={:.6g} bound={:.6g} {}  [{}]\n", r.name, r.measured,
                               r.bound, r.notes, repro);
    }
    std::cout << fmt::format("{} of {} checks passed\n", result.reports.size() - failed,
                             result.reports.size());
  }
  return result.passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hankel matrices, Schatten norms and Besov spaces: experiment runner"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    ExperimentKind kind;
    const char* help;
  };
  const Command commands[] = {
      {"ratio-sweep", ExperimentKind::ratio_sweep, "Schatten / Besov ratio over p and random symbols"},
      {"lacunary-growth", ExperimentKind::lacunary_growth, "Certified sqrt(p) lower bounds for lacunary symbols"},
      {"projection-norm", ExperimentKind::projection_norm, "Lower bounds on the Hankel projection norm on S^p"},
      {"block-sweep", ExperimentKind::block_sweep, "Ratio sweep with d x d matrix coefficients"},
      {"check-suite", ExperimentKind::check_suite, "Run every identity and inequality check"},
  };

  CommonOptions opts;
  std::optional<ExperimentKind> chosen;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, opts);
    if (c.kind == ExperimentKind::check_suite) {
      sub->add_option("--only", opts.only, "Run only the checks with this name");
      sub->add_option("--index", opts.index, "With --only: run only this instance");
    }
    const ExperimentKind kind = c.kind;
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    return run(*chosen, opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::length_error& e) {
    std::cerr << "size limit: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

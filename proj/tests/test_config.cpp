#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "hankel_lab/config.hpp"

using namespace hankel_lab;

namespace {

// Line number reported by a ConfigError thrown from fn, or 0 when none is thrown.
template <typename Fn>
std::size_t error_line(Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.line();
  }
  return 0;
}

std::string error_text(const std::string& text, ExperimentKind kind, bool json) {
  try {
    if (json) {
      parse_json_config(text, kind, "cfg.json");
    } else {
      parse_ini_config(text, kind, "cfg.ini");
    }
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("experiment names") {
  for (auto k : {ExperimentKind::ratio_sweep, ExperimentKind::projection_norm, ExperimentKind::lacunary_growth,
                 ExperimentKind::block_sweep, ExperimentKind::check_suite}) {
    CHECK(parse_experiment_kind(to_string(k)) == k);
  }
  CHECK(parse_experiment_kind("ratio-sweep") == ExperimentKind::ratio_sweep);
  CHECK_FALSE(parse_experiment_kind("nonsense").has_value());
}

TEST_CASE("defaults validate") {
  for (auto k : {ExperimentKind::ratio_sweep, ExperimentKind::projection_norm, ExperimentKind::lacunary_growth,
                 ExperimentKind::block_sweep, ExperimentKind::check_suite}) {
    CHECK_NOTHROW(default_config(k).validate());
    CHECK(default_config(k).experiment == k);
  }
}

TEST_CASE("INI parsing overrides defaults") {
  const std::string text =
      "# sweep\n"
      "[run]\n"
      "p_grid = 1, 2, inf\n"
      "m = 12   ; window\n"
      "degree = 11\n"
      "alpha = 0.25\n"
      "beta = 0.5\n"
      "trials = 3\n"
      "seed = 18446744073709551615\n"
      "family = lacunary\n"
      "output_path = out/x.csv\n";
  const ExperimentConfig c = parse_ini_config(text, ExperimentKind::ratio_sweep);
  REQUIRE(c.p_grid.size() == 3);
  CHECK(c.p_grid[1] == 2.0);
  CHECK(std::isinf(c.p_grid[2]));
  CHECK(c.m == 12);
  CHECK(c.degree == 11);
  CHECK(c.alpha == 0.25);
  CHECK(c.trials == 3);
  CHECK(c.seed == 18446744073709551615ull);
  CHECK(c.family == SymbolFamily::lacunary);
  CHECK(c.output_path == "out/x.csv");
  CHECK(c.block_dim == 1);
}

TEST_CASE("JSON parsing overrides defaults") {
  const std::string text = R"({
  "experiment": "block_sweep",
  "p_grid": [1, 1.5, 2],
  "block_dims": [1, 3],
  "m": 10,
  "degree": 9,
  "trials": 2
})";
  const ExperimentConfig c = parse_json_config(text, ExperimentKind::block_sweep);
  CHECK(c.p_grid == std::vector<double>{1.0, 1.5, 2.0});
  CHECK(c.block_dims == std::vector<std::size_t>{1, 3});
  CHECK(c.m == 10);
  CHECK(c.trials == 2);
}

TEST_CASE("INI errors name the offending line") {
  CHECK(error_line([] { parse_ini_config("m = 8\n\nbogus = 1\n", ExperimentKind::ratio_sweep); }) == 3);
  CHECK(error_line([] { parse_ini_config("m = 8\nno equals sign\n", ExperimentKind::ratio_sweep); }) == 2);
  CHECK(error_line([] { parse_ini_config("trials = many\n", ExperimentKind::ratio_sweep); }) == 1);
  CHECK(error_line([] { parse_ini_config("\n\np_grid = 1, x\n", ExperimentKind::ratio_sweep); }) == 3);
  CHECK(error_line([] { parse_ini_config("experiment = lacunary_growth\n", ExperimentKind::ratio_sweep); }) == 1);
  CHECK(error_text("bogus = 1\n", ExperimentKind::ratio_sweep, false).rfind("cfg.ini:1:", 0) == 0);
}

TEST_CASE("validation failures point at the responsible key") {
  CHECK(error_line([] { parse_ini_config("seed = 1\np_grid = 0.5, 2\n", ExperimentKind::ratio_sweep); }) == 2);
  CHECK(error_line([] { parse_ini_config("seed = 1\n\ntrials = 0\n", ExperimentKind::ratio_sweep); }) == 3);
  CHECK(error_line([] { parse_ini_config("degree = 40\n", ExperimentKind::ratio_sweep); }) == 1);
  CHECK(error_line([] { parse_ini_config("alpha = -0.3\n", ExperimentKind::ratio_sweep); }) == 1);
  CHECK(error_line([] { parse_ini_config("\np_grid = 2, 14\n", ExperimentKind::lacunary_growth); }) == 2);
  CHECK(error_line([] { parse_ini_config("p_grid = 1, 2\n", ExperimentKind::projection_norm); }) == 1);
  CHECK(error_line([] { parse_ini_config("m = 2000\nblock_dims = 1, 4\ndegree = 3\n", ExperimentKind::block_sweep); }) == 2);
  CHECK(error_line([] { parse_ini_config("paley_max_n = 14\n", ExperimentKind::check_suite); }) == 1);
}

TEST_CASE("JSON errors name the offending line") {
  const std::string bad_key = "{\n  \"m\": 8,\n  \"bogus\": 1\n}";
  CHECK(error_line([&] { parse_json_config(bad_key, ExperimentKind::ratio_sweep); }) == 3);
  const std::string syntax = "{\n  \"m\": 8,\n  \"degree\": ,\n}";
  CHECK(error_line([&] { parse_json_config(syntax, ExperimentKind::ratio_sweep); }) == 3);
  const std::string invalid = "{\n  \"seed\": 3,\n  \"trials\": -1\n}";
  CHECK(error_line([&] { parse_json_config(invalid, ExperimentKind::ratio_sweep); }) == 3);
  CHECK(error_line([] { parse_json_config("[1, 2]", ExperimentKind::ratio_sweep); }) == 1);
}

TEST_CASE("check suite accepts zero trials; other experiments do not") {
  CHECK_NOTHROW(parse_ini_config("trials = 0\n", ExperimentKind::check_suite));
  CHECK_THROWS_AS(parse_ini_config("trials = 0\n", ExperimentKind::lacunary_growth), ConfigError);
}

TEST_CASE("load_config dispatches on the extension") {
  const auto dir = std::filesystem::temp_directory_path() / "hankel_lab_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "a.json") << R"({"m": 20, "degree": 4})";
    std::ofstream(dir / "a.ini") << "m = 21\ndegree = 4\n";
  }
  CHECK(load_config((dir / "a.json").string(), ExperimentKind::ratio_sweep).m == 20);
  CHECK(load_config((dir / "a.ini").string(), ExperimentKind::ratio_sweep).m == 21);
  CHECK_THROWS_AS(load_config((dir / "missing.ini").string(), ExperimentKind::ratio_sweep), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config echo") {
  const auto j = to_json(default_config(ExperimentKind::projection_norm));
  CHECK(j["experiment"] == "projection_norm");
  CHECK(j["m"] == 24);
  CHECK(j["p_grid"].size() == 6);
}

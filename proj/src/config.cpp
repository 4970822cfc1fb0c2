#include "hankel_lab/config.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "hankel_lab/checks.hpp"

namespace hankel_lab {

namespace {

using json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else if (c != '[' && c != ']') {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  if (out.size() == 1 && out.front().empty()) out.clear();
  return out;
}

// Reports errors against one (source, line, key).
struct Site {
  const std::string& source;
  std::size_t line;
  std::string key;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(source, line, fmt::format("key '{}': {}", key, what));
  }

  double real(const std::string& v) const {
    std::string low = v;
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
    if (low == "inf" || low == "infinity") return std::numeric_limits<double>::infinity();
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
      fail(fmt::format("'{}' is not a number", v));
    }
    return x;
  }

  template <typename Int>
  Int integer(const std::string& v) const {
    Int x{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
      fail(fmt::format("'{}' is not a valid integer", v));
    }
    return x;
  }
};

using Setter = std::function<void(ExperimentConfig&, const std::string&, const Site&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"experiment",
       [](ExperimentConfig& c, const std::string& v, const Site& s) {
         const auto kind = parse_experiment_kind(v);
         if (!kind) s.fail(fmt::format("unknown experiment '{}'", v));
         if (*kind != c.experiment) {
           s.fail(fmt::format("file is for '{}' but the command runs '{}'", to_string(*kind),
                              to_string(c.experiment)));
         }
       }},
      {"p_grid",
       [](ExperimentConfig& c, const std::string& v, const Site& s) {
         c.p_grid.clear();
         for (const auto& item : split_list(v)) c.p_grid.push_back(s.real(item));
       }},
      {"m", [](ExperimentConfig& c, const std::string& v, const Site& s) { c.m = s.integer<std::size_t>(v); }},
      {"degree",
       [](ExperimentConfig& c, const std::string& v, const Site& s) { c.degree = s.integer<std::size_t>(v); }},
      {"block_dim",
       [](ExperimentConfig& c, const std::string& v, const Site& s) { c.block_dim = s.integer<std::size_t>(v); }},
      {"block_dims",
       [](ExperimentConfig& c, const std::string& v, const Site& s) {
         c.block_dims.clear();
         for (const auto& item : split_list(v)) c.block_dims.push_back(s.integer<std::size_t>(item));
       }},
      {"alpha", [](ExperimentConfig& c, const std::string& v, const Site& s) { c.alpha = s.real(v); }},
      {"beta", [](ExperimentConfig& c, const std::string& v, const Site& s) { c.beta = s.real(v); }},
      {"trials", [](ExperimentConfig& c, const std::string& v, const Site& s) { c.trials = s.integer<int>(v); }},
      {"seed",
       [](ExperimentConfig& c, const std::string& v, const Site& s) { c.seed = s.integer<std::uint64_t>(v); }},
      {"output_path", [](ExperimentConfig& c, const std::string& v, const Site&) { c.output_path = v; }},
      {"family",
       [](ExperimentConfig& c, const std::string& v, const Site& s) {
         for (auto f : {SymbolFamily::gaussian, SymbolFamily::monomial, SymbolFamily::lacunary,
                        SymbolFamily::constant}) {
           if (v == to_string(f)) {
             c.family = f;
             return;
           }
         }
         s.fail(fmt::format("unknown family '{}' (gaussian, monomial, lacunary, constant)", v));
       }},
      {"multistarts",
       [](ExperimentConfig& c, const std::string& v, const Site& s) { c.multistarts = s.integer<int>(v); }},
      {"iterations",
       [](ExperimentConfig& c, const std::string& v, const Site& s) { c.iterations = s.integer<int>(v); }},
      {"tolerance_scale",
       [](ExperimentConfig& c, const std::string& v, const Site& s) { c.tolerance_scale = s.real(v); }},
      {"paley_max_n",
       [](ExperimentConfig& c, const std::string& v, const Site& s) { c.paley_max_n = s.integer<unsigned>(v); }},
  };
  return table;
}

void apply(ExperimentConfig& cfg, const std::string& key, const std::string& value,
           const std::string& source, std::size_t line) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError(source, line, fmt::format("unknown key '{}'", key));
  it->second(cfg, value, Site{source, line, key});
}

// Line of a byte offset in text (1-based).
std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

// Line where "key" first appears, or 0.
std::size_t json_key_line(std::string_view text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  return pos == std::string_view::npos ? 0 : line_of(text, pos);
}

std::string json_scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return fmt::format("{:.17g}", v.get<double>());
  return v.dump();
}

json p_value(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::ratio_sweep: return "ratio_sweep";
    case ExperimentKind::projection_norm: return "projection_norm";
    case ExperimentKind::lacunary_growth: return "lacunary_growth";
    case ExperimentKind::block_sweep: return "block_sweep";
    case ExperimentKind::check_suite: return "check_suite";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view text) {
  std::string t(text);
  std::replace(t.begin(), t.end(), '-', '_');
  for (auto k : {ExperimentKind::ratio_sweep, ExperimentKind::projection_norm,
                 ExperimentKind::lacunary_growth, ExperimentKind::block_sweep,
                 ExperimentKind::check_suite}) {
    if (t == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string_view to_string(SymbolFamily family) {
  switch (family) {
    case SymbolFamily::gaussian: return "gaussian";
    case SymbolFamily::monomial: return "monomial";
    case SymbolFamily::lacunary: return "lacunary";
    case SymbolFamily::constant: return "constant";
  }
  return "unknown";
}

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? fmt::format("{}:{}: {}", source, line, message)
                                  : fmt::format("{}: {}", source, message)),
      line_(line) {}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  switch (kind) {
    case ExperimentKind::ratio_sweep:
      break;
    case ExperimentKind::block_sweep:
      c.p_grid = {1.0, 2.0, 4.0};
      c.m = 16;
      c.degree = 7;
      c.trials = 5;
      break;
    case ExperimentKind::lacunary_growth:
      c.p_grid = {2, 3, 4, 5, 6, 7, 8, 9, 10};
      c.trials = 1;
      break;
    case ExperimentKind::projection_norm:
      // The subgradient ascent degenerates as p -> 1, so the grid starts at 1.05.
      c.p_grid = {1.05, 4.0 / 3.0, 1.5, 2.0, 3.0, 4.0};
      c.m = 24;
      c.trials = 1;
      break;
    case ExperimentKind::check_suite:
      c.trials = 20;
      break;
  }
  return c;
}

void ExperimentConfig::validate(const std::string& source, const KeyLines& lines) const {
  // Blames the first listed key that the file actually set.
  auto fail_at = [&](std::initializer_list<const char*> keys, const std::string& msg) {
    for (const char* key : keys) {
      const auto it = lines.find(key);
      if (it != lines.end()) throw ConfigError(source, it->second, msg);
    }
    throw ConfigError(source, 0, msg);
  };
  if (p_grid.empty()) fail_at({"p_grid"}, "p_grid must not be empty");
  for (double p : p_grid) {
    if (!(p >= 1.0)) fail_at({"p_grid"}, fmt::format("p_grid entry {} is below 1", p));
  }
  const bool suite = experiment == ExperimentKind::check_suite;
  if (suite ? trials < 0 : trials < 1) {
    fail_at({"trials"}, fmt::format("trials = {} must be >= {}", trials, suite ? 0 : 1));
  }
  if (m < 1) fail_at({"m"}, "m must be >= 1");
  if (block_dim < 1) fail_at({"block_dim"}, "block_dim must be >= 1");
  if (multistarts < 1) fail_at({"multistarts"}, "multistarts must be >= 1");
  if (iterations < 1) fail_at({"iterations"}, "iterations must be >= 1");
  if (!(tolerance_scale >= 0.0)) fail_at({"tolerance_scale"}, "tolerance_scale must be >= 0");
  if (paley_max_n > 13) fail_at({"paley_max_n"}, "paley_max_n must be <= 13 (window 2^n+1 <= 2^14)");

  switch (experiment) {
    case ExperimentKind::ratio_sweep:
    case ExperimentKind::block_sweep: {
      if (m < degree + 1) {
        fail_at({"m", "degree"}, fmt::format("m = {} must be >= degree + 1 = {}", m, degree + 1));
      }
      const std::vector<std::size_t> dims =
          experiment == ExperimentKind::block_sweep ? block_dims : std::vector<std::size_t>{block_dim};
      const auto dim_keys = {experiment == ExperimentKind::block_sweep ? "block_dims" : "block_dim", "m"};
      if (dims.empty()) fail_at(dim_keys, "block_dims must not be empty");
      for (auto d : dims) {
        if (d < 1) fail_at(dim_keys, "block dimensions must be >= 1");
        if (m * d > kMaxDenseSvd) {
          fail_at(dim_keys, fmt::format("m * d = {} exceeds the dense SVD cap {}", m * d, kMaxDenseSvd));
        }
      }
      for (double p : p_grid) {
        const double h = std::isinf(p) ? 0.0 : 1.0 / (2.0 * p);
        const double lowest = std::min(alpha, beta);
        if (std::isinf(p) ? lowest < 0.0 : !(lowest + h > 0.0)) {
          fail_at({"alpha", "beta", "p_grid"}, fmt::format("min(alpha, beta) = {} must exceed -1/2p at p = {}", lowest, p));
        }
      }
      break;
    }
    case ExperimentKind::lacunary_growth:
      for (double p : p_grid) {
        if (std::isinf(p)) fail_at({"p_grid"}, "lacunary_growth needs finite p");
        const auto n = static_cast<std::size_t>(std::floor(p));
        if (n > 13 || (std::size_t{1} << n) + 1 > kMaxLacunaryWindow) {
          fail_at({"p_grid"}, fmt::format("p = {} needs a window 2^{}+1 beyond the cap {}", p, n, kMaxLacunaryWindow));
        }
      }
      break;
    case ExperimentKind::projection_norm:
      for (double p : p_grid) {
        if (p == 1.0 || std::isinf(p)) {
          fail_at({"p_grid"}, fmt::format("projection_norm rejects p = {}: the projection is unbounded there", p));
        }
      }
      break;
    case ExperimentKind::check_suite:
      break;
  }
}

ExperimentConfig parse_ini_config(std::string_view text, ExperimentKind kind,
                                  const std::string& source) {
  ExperimentConfig cfg = default_config(kind);
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  ExperimentConfig::KeyLines lines;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    const auto comment = s.find_first_of("#;");
    if (comment != std::string::npos) s = trim(s.substr(0, comment));
    if (s.empty() || s.front() == '[') continue;  // section headers carry no meaning
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ConfigError(source, line, "missing key before '='");
    apply(cfg, key, trim(s.substr(eq + 1)), source, line);
    lines.emplace(key, line);
  }
  cfg.validate(source, lines);
  return cfg;
}

ExperimentConfig parse_json_config(std::string_view text, ExperimentKind kind,
                                   const std::string& source) {
  ExperimentConfig cfg = default_config(kind);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source, line_of(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
  }
  if (!doc.is_object()) throw ConfigError(source, 1, "top level must be a JSON object");
  ExperimentConfig::KeyLines lines;
  for (const auto& [key, value] : doc.items()) {
    std::string text_value;
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) text_value += ",";
        text_value += json_scalar_text(value[i]);
      }
    } else {
      text_value = json_scalar_text(value);
    }
    const std::size_t line = json_key_line(text, key);
    apply(cfg, key, text_value, source, line);
    if (line > 0) lines.emplace(key, line);
  }
  cfg.validate(source, lines);
  return cfg;
}

ExperimentConfig load_config(const std::string& path, ExperimentKind kind) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return is_json ? parse_json_config(buf.str(), kind, path) : parse_ini_config(buf.str(), kind, path);
}

json to_json(const ExperimentConfig& c) {
  json p = json::array();
  for (double x : c.p_grid) p.push_back(p_value(x));
  return json{{"experiment", to_string(c.experiment)},
              {"p_grid", p},
              {"m", c.m},
              {"degree", c.degree},
              {"block_dim", c.block_dim},
              {"block_dims", c.block_dims},
              {"alpha", c.alpha},
              {"beta", c.beta},
              {"trials", c.trials},
              {"seed", c.seed},
              {"output_path", c.output_path},
              {"family", to_string(c.family)},
              {"multistarts", c.multistarts},
              {"iterations", c.iterations},
              {"tolerance_scale", c.tolerance_scale},
              {"paley_max_n", c.paley_max_n}};
}

}  // namespace hankel_lab

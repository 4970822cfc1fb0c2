#pragma once

#include <string>

#include <json.hpp>

namespace hankel_lab {

// Outcome of one named identity or inequality verification.
//
// Inequality checks pass when measured <= bound * (1 + tolerance).
// Identity checks pass when |measured - bound| <= tolerance * max(1, |bound|),
// where `bound` holds the exact target.
struct CheckReport {
  enum class Kind { inequality, identity };

  std::string name;
  Kind kind = Kind::inequality;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  double measured = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool pass = false;
  double tolerance = 0.0;
  std::string notes;

  static CheckReport inequality(std::string name, nlohmann::ordered_json params,
                                double measured, double bound, double tolerance,
                                std::string notes = {});
  static CheckReport identity(std::string name, nlohmann::ordered_json params,
                              double measured, double target, double tolerance,
                              std::string notes = {});

  // Recomputes `pass` and `ratio` from the other fields.
  void evaluate();
};

nlohmann::ordered_json to_json(const CheckReport& report);
CheckReport report_from_json(const nlohmann::ordered_json& j);

}  // namespace hankel_lab

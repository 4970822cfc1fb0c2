#include "hankel_lab/report.hpp"

#include <cmath>
#include <stdexcept>

namespace hankel_lab {

CheckReport CheckReport::inequality(std::string name, nlohmann::ordered_json params,
                                    double measured, double bound, double tolerance,
                                    std::string notes) {
  CheckReport r;
  r.name = std::move(name);
  r.kind = Kind::inequality;
  r.params = std::move(params);
  r.measured = measured;
  r.bound = bound;
  r.tolerance = tolerance;
  r.notes = std::move(notes);
  r.evaluate();
  return r;
}

CheckReport CheckReport::identity(std::string name, nlohmann::ordered_json params,
                                  double measured, double target, double tolerance,
                                  std::string notes) {
  CheckReport r;
  r.name = std::move(name);
  r.kind = Kind::identity;
  r.params = std::move(params);
  r.measured = measured;
  r.bound = target;
  r.tolerance = tolerance;
  r.notes = std::move(notes);
  r.evaluate();
  return r;
}

void CheckReport::evaluate() {
  if (kind == Kind::inequality) {
    pass = std::isfinite(measured) && measured <= bound * (1.0 + tolerance);
  } else {
    pass = std::isfinite(measured) &&
           std::abs(measured - bound) <= tolerance * std::max(1.0, std::abs(bound));
  }
  // ratio is measured/bound; a zero bound reports 0 (ratio carries no information).
  ratio = bound != 0.0 ? measured / bound : 0.0;
}

nlohmann::ordered_json to_json(const CheckReport& report) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["kind"] = report.kind == CheckReport::Kind::inequality ? "inequality" : "identity";
  j["params"] = report.params;
  j["measured"] = report.measured;
  j["bound"] = report.bound;
  j["ratio"] = report.ratio;
  j["pass"] = report.pass;
  j["tolerance"] = report.tolerance;
  j["notes"] = report.notes;
  return j;
}

CheckReport report_from_json(const nlohmann::ordered_json& j) {
  CheckReport r;
  r.name = j.at("name").get<std::string>();
  const auto kind = j.value("kind", std::string("inequality"));
  if (kind == "inequality") {
    r.kind = CheckReport::Kind::inequality;
  } else if (kind == "identity") {
    r.kind = CheckReport::Kind::identity;
  } else {
    throw std::invalid_argument("unknown check kind: " + kind);
  }
  r.params = j.at("params");
  r.measured = j.at("measured").get<double>();
  r.bound = j.at("bound").get<double>();
  r.ratio = j.at("ratio").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.tolerance = j.at("tolerance").get<double>();
  r.notes = j.value("notes", std::string());
  return r;
}

}  // namespace hankel_lab

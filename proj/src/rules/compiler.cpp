#include "dmrsim/rules/predicate.hpp"

namespace dmrsim::rules {

Quantity SafetyPredicate::threshold() const {
  return v_max * t_stop_budget + d_offset;
}

bool SafetyPredicate::evaluate(Quantity d, Quantity t_stop_measured) const {
  Quantity t_eff = t_stop_measured > t_stop_budget ? t_stop_measured : t_stop_budget;
  return d >= v_max * t_eff + d_offset;
}

bool SafetyPredicate::evaluate_m_ms(double d_m, double t_stop_ms) const {
  return evaluate(Quantity::meters(d_m), Quantity::seconds(t_stop_ms / 1000.0));
}

nlohmann::json SafetyPredicate::to_json() const {
  return nlohmann::json{
      {"rule", nlohmann::json{
                   {"v_max_mps", v_max.value()},
                   {"t_stop_budget_ms", t_stop_budget.value() * 1000.0},
                   {"d_brake_m", d_brake.value()},
                   {"margin_factor", margin_factor.value()},
                   {"d_offset_m", d_offset.value()},
                   {"d_min_m", d_min.value()},
                   {"warning_margin_m", warning_margin.value()},
                   {"threshold_m", threshold().value()},
                   {"dc_target", dc_target},
                   {"category", category},
               }}};
}

std::string CompileResult::abort_message() const {
  std::string msg(kInconsistentMarker);
  for (const auto& v : violations) {
    msg += "\n  violated: ";
    msg += v;
  }
  return msg;
}

CompileResult compile_rules(const RuleDocument& doc) {
  CompileResult result;
  auto violated = [&](std::string text) { result.violations.push_back(std::move(text)); };

  SafetyPredicate p;
  p.v_max = *doc.get("v_max");
  p.t_stop_budget = *doc.get("t_stop_budget");
  p.d_brake = *doc.get("d_brake");
  p.d_min = *doc.get("d_min");
  p.warning_margin = *doc.get("warning_margin");
  p.margin_factor = doc.get("margin_factor")
                        .value_or(Quantity::scalar(kDefaultMarginFactorMicro));

  if (auto cat = doc.get("category")) {
    if (cat->micro() % Quantity::kScale != 0) {
      violated("category must be an integer");
    } else {
      p.category = static_cast<int>(cat->micro() / Quantity::kScale);
    }
  }
  if (auto dc = doc.get("dc_target")) p.dc_target = dc->value();

  if (!(p.v_max > Quantity::meters_per_second(0))) violated("v_max > 0");
  if (!(p.t_stop_budget > Quantity::seconds(0))) violated("t_stop_budget > 0");
  if (p.d_brake < Quantity::meters(0)) violated("d_brake >= 0");
  if (p.warning_margin < Quantity::meters(0)) violated("warning_margin >= 0");
  if (!(p.margin_factor > Quantity::scalar(0))) violated("margin_factor > 0");
  if (p.dc_target < 0.0 || p.dc_target > 1.0) violated("dc_target within [0, 1]");
  if (p.category < 2 || p.category > 4) violated("category in {2, 3, 4}");

  p.d_offset = p.margin_factor * p.d_brake;

  // The Stop Zone radius must dominate the braking threshold, otherwise the
  // zone response cannot honor the separation check.
  if (result.violations.empty() && p.d_min < p.threshold()) {
    violated("d_min >= v_max * t_stop_budget + d_offset (" +
             p.d_min.magnitude_text() + " m < " + p.threshold().magnitude_text() +
             " m)");
  }

  if (!result.violations.empty()) return result;
  result.predicate = p;
  return result;
}

}  // namespace dmrsim::rules

#pragma once

#include <nlohmann/json.hpp>

#include "survtheta/comparators.hpp"
#include "survtheta/simulate.hpp"
#include "survtheta/step_function.hpp"
#include "survtheta/theta_test.hpp"

namespace survtheta {

inline constexpr int kSchemaVersion = 1;

// {"initial_value": v0, "steps": [{"t": t1, "value": v1}, ...]}
void to_json(nlohmann::json& j, const StepFunction& f);
void from_json(const nlohmann::json& j, StepFunction& f);

void to_json(nlohmann::json& j, const ThetaReport& r);
void to_json(nlohmann::json& j, const RankTestReport& r);
void to_json(nlohmann::json& j, const MixtureSpec& m);
void to_json(nlohmann::json& j, const SimulationSpec& s);
void to_json(nlohmann::json& j, const RejectionRate& r);
void to_json(nlohmann::json& j, const RejectionCell& c);
void to_json(nlohmann::json& j, const PowerResult& r);
void to_json(nlohmann::json& j, const Type1Result& r);
void to_json(nlohmann::json& j, const SamplingResult& r);
void to_json(nlohmann::json& j, const MseResult& r);

}  // namespace survtheta

#include "survtheta/json_io.hpp"

#include "survtheta/rng.hpp"

namespace survtheta {

using nlohmann::json;

void to_json(json& j, const StepFunction& f) {
    json steps = json::array();
    for (std::size_t i = 0; i < f.knots().size(); ++i) {
        steps.push_back({{"t", f.knots()[i]}, {"value", f.values()[i]}});
    }
    j = json{{"initial_value", f.initial_value()}, {"steps", std::move(steps)}};
}

void from_json(const json& j, StepFunction& f) {
    std::vector<double> knots, values;
    for (const auto& s : j.at("steps")) {
        knots.push_back(s.at("t").get<double>());
        values.push_back(s.at("value").get<double>());
    }
    f = StepFunction(j.at("initial_value").get<double>(), std::move(knots), std::move(values));
}

void to_json(json& j, const ThetaReport& r) {
    json cohorts = json::array();
    for (const auto& c : r.cohorts) {
        cohorts.push_back({{"name", c.name},
                           {"tau", c.tau},
                           {"horizon", c.horizon},
                           {"q1", c.q1},
                           {"q2", c.q2},
                           {"phi", c.phi},
                           {"n1", c.n1},
                           {"n2", c.n2}});
    }
    j = json{{"theta", r.theta},
             {"sigma2", r.sigma2},
             {"alpha", r.alpha},
             {"ci_lower", r.ci_lower},
             {"ci_upper", r.ci_upper},
             {"p_value", r.p_value},
             {"tau", r.tau},
             {"tau_rule", to_string(r.tau_rule)},
             {"n1", r.n1},
             {"n2", r.n2},
             {"p1", r.p1},
             {"p2", r.p2},
             {"cohorts", std::move(cohorts)}};
}

void to_json(json& j, const RankTestReport& r) {
    j = json{{"method", to_string(r.method)},
             {"statistic", r.statistic},
             {"statistic_kind", "standardized_z"},
             {"p_value", r.p_value},
             {"score", r.score},
             {"variance", r.variance}};
}

void to_json(json& j, const MixtureSpec& m) {
    j = json{{"q2", m.q2},
             {"exp_rate", m.exp_rate},
             {"weibull_shape", m.weibull_shape},
             {"weibull_scale", m.weibull_scale},
             {"censor_time", m.censor_time ? json(*m.censor_time) : json(nullptr)}};
}

void to_json(json& j, const SimulationSpec& s) {
    j = json{{"sizes", s.sizes},
             {"replicates", s.replicates},
             {"alpha", s.alpha},
             {"seed", s.seed},
             {"rng", kRngIdentity},
             {"tau_rule", to_string(s.tau_rule)}};
}

void to_json(json& j, const RejectionRate& r) {
    j = json{{"rejections", r.rejections}, {"trials", r.trials}, {"rate", r.rate()}, {"se", r.standard_error()}};
}

void to_json(json& j, const RejectionCell& c) {
    j = json{{"n", c.n},
             {"successes", c.successes},
             {"failures", c.failures},
             {"theta", c.theta},
             {"log_rank", c.log_rank},
             {"gehan_wilcoxon", c.gehan}};
    if (!c.theta_p.empty()) {
        j["p_values"] = json{{"theta", c.theta_p}, {"log_rank", c.log_rank_p}, {"gehan_wilcoxon", c.gehan_p}};
    }
}

void to_json(json& j, const PowerResult& r) {
    json reference = r.options.reference_mixture ? json(*r.options.reference_mixture)
                                                 : json{{"exp_rate", r.options.reference_rate}};
    j = json{{"experiment", to_string(Experiment::power)},
             {"spec", r.spec},
             {"mixture", r.mixture},
             {"reference", std::move(reference)},
             {"membership", to_string(r.options.membership)},
             {"cells", r.cells}};
}

void to_json(json& j, const Type1Result& r) {
    j = json{{"experiment", to_string(Experiment::type1_resample)},
             {"spec", r.spec},
             {"population", static_cast<int>(r.population)},
             {"cells", r.cells}};
}

void to_json(json& j, const SamplingResult& r) {
    j = json{{"experiment", to_string(Experiment::sampling_distribution)},
             {"size", r.size},
             {"replicates", r.replicates},
             {"seed", r.seed},
             {"rng", kRngIdentity},
             {"tau_rule", to_string(r.tau_rule)},
             {"failures", r.failures},
             {"reference_sigma2", r.reference_sigma2},
             {"mean", r.mean},
             {"ks_statistic", r.ks_statistic},
             {"thetas", r.thetas}};
}

void to_json(json& j, const MseResult& r) {
    json cells = json::array();
    for (const auto& c : r.cells) {
        cells.push_back({{"n", c.n},
                         {"weighted", {{"mean", c.weighted_mean}, {"variance", c.weighted_variance}, {"mse", c.weighted_mse}}},
                         {"kaplan_meier", {{"mean", c.km_mean}, {"variance", c.km_variance}, {"mse", c.km_mse}}}});
    }
    j = json{{"experiment", to_string(Experiment::estimator_mse)},
             {"spec", r.spec},
             {"mixture", r.mixture},
             {"grid", r.grid},
             {"truth", r.truth},
             {"cells", std::move(cells)}};
}

}  // namespace survtheta

#include "survtheta/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace survtheta {

namespace {

struct TimeGroup {
    double time;
    std::size_t events;
    std::size_t censored;
};

std::vector<TimeGroup> group_times(std::span<const TimeEvent> obs) {
    if (obs.empty()) throw std::domain_error("product-limit estimate needs at least one observation");
    std::vector<TimeEvent> sorted(obs.begin(), obs.end());
    for (const auto& o : sorted) {
        if (!std::isfinite(o.time) || !(o.time > 0.0)) {
            throw std::domain_error("product-limit estimate needs positive finite times");
        }
    }
    std::sort(sorted.begin(), sorted.end(), [](const TimeEvent& a, const TimeEvent& b) { return a.time < b.time; });
    std::vector<TimeGroup> groups;
    for (const auto& o : sorted) {
        if (groups.empty() || groups.back().time != o.time) groups.push_back({o.time, 0, 0});
        if (o.event) ++groups.back().events;
        else ++groups.back().censored;
    }
    return groups;
}

enum class Target { events, censorings };

SurvivalCurve product_limit(std::span<const TimeEvent> obs, Target target) {
    const auto groups = group_times(obs);
    SurvivalCurve out;
    std::vector<double> values;
    std::size_t remaining = obs.size();
    double s = 1.0;
    for (const auto& g : groups) {
        // Events leave before censorings at the same time.
        const std::size_t d = target == Target::events ? g.events : g.censored;
        const std::size_t r = target == Target::events ? remaining : remaining - g.events;
        if (d > 0) {
            s *= 1.0 - static_cast<double>(d) / static_cast<double>(r);
            out.jump_times.push_back(g.time);
            out.at_risk.push_back(r);
            out.deaths.push_back(d);
            values.push_back(s);
        }
        remaining -= g.events + g.censored;
    }
    out.surv = StepFunction(1.0, out.jump_times, std::move(values));
    return out;
}

}  // namespace

SurvivalCurve km_estimate(std::span<const TimeEvent> obs) { return product_limit(obs, Target::events); }

SurvivalCurve censoring_km(std::span<const TimeEvent> obs) { return product_limit(obs, Target::censorings); }

StepFunction weighted_survival(const Dataset& ds, Population p) {
    if (ds.cohort_count() == 1) return km_estimate(ds.cell(p, 0)).surv;

    // Sum n_z * S_z and divide by n once, so the curve starts at exactly 1
    // and stays monotone after rounding.
    std::vector<double> counts;
    std::vector<StepFunction> curves;
    for (std::size_t z = 0; z < ds.cohort_count(); ++z) {
        counts.push_back(static_cast<double>(ds.count(p, z)));
        curves.push_back(km_estimate(ds.cell(p, z)).surv);
    }
    const StepFunction sum = linear_combine(counts, curves);
    const double n = static_cast<double>(ds.count(p));
    std::vector<double> values(sum.values().begin(), sum.values().end());
    for (double& v : values) v /= n;
    return StepFunction(sum.initial_value() / n, std::vector<double>(sum.knots().begin(), sum.knots().end()),
                        std::move(values));
}

SurvivalCurve pooled_cohort_km(const Dataset& ds, std::size_t cohort) {
    return km_estimate(ds.pooled_cohort(cohort));
}

double phi_integral(const StepFunction& curve, double t, double tau) {
    if (t > tau) throw std::domain_error("phi_integral: t exceeds tau");
    return curve.integrate(t, tau);
}

double phi_integral(const SurvivalCurve& curve, double t, double tau) {
    return phi_integral(curve.surv, t, tau);
}

}  // namespace survtheta

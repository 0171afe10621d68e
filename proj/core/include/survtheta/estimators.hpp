#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "survtheta/dataset.hpp"
#include "survtheta/step_function.hpp"

namespace survtheta {

/// A product-limit curve plus the bookkeeping that produced it.
///
/// `surv` starts at 1 and jumps only at `jump_times`. At jump k the value is
/// multiplied by (1 - deaths[k] / at_risk[k]).
struct SurvivalCurve {
    StepFunction surv{1.0};
    std::vector<double> jump_times;
    std::vector<std::size_t> at_risk;
    std::vector<std::size_t> deaths;

    double operator()(double t) const { return surv.eval(t); }
};

/// Kaplan-Meier estimate. Events at a tied time are removed from the risk set
/// before censorings at that time. Throws std::domain_error on empty input or
/// non-positive times.
SurvivalCurve km_estimate(std::span<const TimeEvent> obs);

/// Reverse Kaplan-Meier: censorings are the "events". At a time carrying both,
/// subjects whose event occurs there are not at risk of being censored.
SurvivalCurve censoring_km(std::span<const TimeEvent> obs);

/// Prevalence-weighted population curve: sum_z q_z^(i) * KM of cell (i, z).
StepFunction weighted_survival(const Dataset& ds, Population p);

/// KM of one cohort with both populations pooled.
SurvivalCurve pooled_cohort_km(const Dataset& ds, std::size_t cohort);

/// Tail area: integral of curve over [t, tau]. Throws std::domain_error when
/// t > tau or t < 0.
double phi_integral(const SurvivalCurve& curve, double t, double tau);
double phi_integral(const StepFunction& curve, double t, double tau);

}  // namespace survtheta

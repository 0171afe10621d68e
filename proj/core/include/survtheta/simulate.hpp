#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "survtheta/dataset.hpp"
#include "survtheta/rng.hpp"
#include "survtheta/theta_test.hpp"

namespace survtheta {

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

/// Inverse-CDF exponential draws: -ln(U) / rate.
std::vector<double> sample_exponential(double rate, std::size_t n, RandomStream& rng);

/// Inverse-CDF Weibull draws: scale * (-ln U)^(1/shape).
std::vector<double> sample_weibull(double shape, double scale, std::size_t n, RandomStream& rng);

double weibull_mean(double shape, double scale);

/// q2 solving (1 - q2) * exp2_mean + q2 * weibull_mean = exp1_mean.
/// Throws std::domain_error when exp2_mean == weibull_mean.
double equal_mean_q2(double exp1_mean, double exp2_mean, double weibull_mean);

// ---------------------------------------------------------------------------
// Experiment specifications
// ---------------------------------------------------------------------------

/// (1 - q2) Exponential(exp_rate) + q2 Weibull(shape, scale) lifetimes.
/// Cohort 1 is the exponential component, cohort 2 the Weibull component.
struct MixtureSpec {
    double q2 = 0.25;
    double exp_rate = 0.2;
    double weibull_shape = 5.0;
    double weibull_scale = 1.0;
    std::optional<double> censor_time;  // administrative censoring horizon

    void validate() const;
    double survival(double t) const;
    double mean() const;
};

/// How cohort membership is assigned to simulated subjects.
enum class Membership {
    binomial,  // each subject is cohort 2 with probability q2
    fixed,     // exactly round(q2 * n) subjects are cohort 2
};

enum class Experiment { power, type1_resample, sampling_distribution, estimator_mse };

const char* to_string(Membership m) noexcept;
const char* to_string(Experiment e) noexcept;

struct SimulationSpec {
    std::vector<std::size_t> sizes{100};  // per population (or total resample size)
    std::size_t replicates = 200;
    double alpha = 0.05;
    std::uint64_t seed = 20240601;
    unsigned threads = 0;  // 0 = hardware concurrency
    TauRule tau_rule = TauRule::per_cohort;

    void validate() const;
};

struct PowerOptions {
    double reference_rate = 0.25;                  // population 1 exponential rate
    std::optional<MixtureSpec> reference_mixture;  // replaces the exponential reference
    Membership membership = Membership::binomial;
};

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct RejectionRate {
    std::size_t rejections = 0;
    std::size_t trials = 0;

    double rate() const;
    /// Binomial Monte-Carlo standard error sqrt(r (1 - r) / trials).
    double standard_error() const;
};

struct RejectionCell {
    std::size_t n = 0;
    std::size_t successes = 0;
    std::size_t failures = 0;  // replicates excluded because a test was undefined
    RejectionRate theta;
    RejectionRate log_rank;
    RejectionRate gehan;

    // Per successful replicate, in replicate order. Filled by the Type-I run.
    std::vector<double> theta_p;
    std::vector<double> log_rank_p;
    std::vector<double> gehan_p;
};

struct PowerResult {
    SimulationSpec spec;
    MixtureSpec mixture;
    PowerOptions options;
    std::vector<RejectionCell> cells;
};

struct Type1Result {
    SimulationSpec spec;
    Population population = Population::first;
    std::vector<RejectionCell> cells;
};

struct SamplingResult {
    std::size_t size = 0;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    TauRule tau_rule = TauRule::per_cohort;
    std::size_t failures = 0;
    std::vector<double> thetas;
    double reference_sigma2 = 0.0;  // from the first successful replicate
    double mean = 0.0;
    double ks_statistic = 0.0;  // against N(0, reference_sigma2)
};

struct MseCell {
    std::size_t n = 0;
    std::vector<double> weighted_mean, weighted_variance, weighted_mse;
    std::vector<double> km_mean, km_variance, km_mse;
};

struct MseResult {
    MixtureSpec mixture;
    SimulationSpec spec;
    std::vector<double> grid;
    std::vector<double> truth;
    std::vector<MseCell> cells;
};

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

/// Draws n subjects of a mixture into `population`.
std::vector<Observation> draw_mixture(const MixtureSpec& mix, std::size_t n, Membership membership,
                                      Population population, RandomStream& rng);

/// Population 1 ~ Exponential(reference_rate) (or reference_mixture), population 2 ~ mix, n each.
/// Both get cohort labels by the membership rule. Theta, log-rank and Gehan tests per replicate.
PowerResult run_power_experiment(const SimulationSpec& spec, const MixtureSpec& mix,
                                 const PowerOptions& options = {});

/// Resamples `population` of `ds` without replacement to each size n, relabels
/// the first n/2 as population 2 and the rest as population 1, and tests.
Type1Result run_type1_resample(const Dataset& ds, Population population, const SimulationSpec& spec);

/// Theta replicates under the same resampling null as run_type1_resample.
SamplingResult run_sampling_distribution(const Dataset& ds, Population population, std::size_t size,
                                         std::size_t replicates, std::uint64_t seed, unsigned threads = 0,
                                         TauRule rule = TauRule::per_cohort);

/// Pointwise variance and MSE of the prevalence-weighted estimator and plain
/// KM on one admixed population.
MseResult run_estimator_mse(const MixtureSpec& mix, const SimulationSpec& spec, std::vector<double> grid);

/// `count` equally spaced points on [0, upper].
std::vector<double> linear_grid(double upper, std::size_t count);

/// sup |F_n(x) - Phi((x - mean) / sd)|.
double ks_statistic_normal(std::span<const double> sample, double mean, double sd);

}  // namespace survtheta

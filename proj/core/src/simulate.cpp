#include "survtheta/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"
#include "survtheta/comparators.hpp"
#include "survtheta/errors.hpp"
#include "survtheta/estimators.hpp"
#include "survtheta/normal.hpp"

namespace survtheta {

namespace {

double draw_exponential(double rate, RandomStream& rng) { return -std::log(rng.uniform()) / rate; }

double draw_weibull(double shape, double scale, RandomStream& rng) {
    return scale * std::pow(-std::log(rng.uniform()), 1.0 / shape);
}

std::uint64_t stream_id(std::size_t size_index, std::size_t replicate) {
    return (static_cast<std::uint64_t>(size_index) << 32) | static_cast<std::uint64_t>(replicate);
}

struct Outcome {
    bool ok = false;
    double theta = 0.0;
    double sigma2 = 0.0;
    double p_theta = 1.0;
    double p_log_rank = 1.0;
    double p_gehan = 1.0;
};

// Replicates whose data cannot support a test (missing cohort cell, no events)
// are reported as failures rather than aborting the run.
Outcome evaluate(std::vector<Observation> obs, std::vector<std::string> names, double alpha, TauRule rule,
                 bool with_comparators) {
    Outcome out;
    try {
        const Dataset ds = Dataset::validate(std::move(obs), std::move(names));
        const ThetaReport report = theta_test(ds, {alpha, rule});
        out.theta = report.theta;
        out.sigma2 = report.sigma2;
        out.p_theta = report.p_value;
        if (with_comparators) {
            const auto g1 = ds.population(Population::first);
            const auto g2 = ds.population(Population::second);
            out.p_log_rank = log_rank(g1, g2).p_value;
            out.p_gehan = gehan_wilcoxon(g1, g2).p_value;
        }
        out.ok = true;
    } catch (const ValidationError&) {
    } catch (const DegenerateError&) {
    } catch (const std::domain_error&) {
    }
    return out;
}

RejectionCell summarize(std::size_t n, const std::vector<Outcome>& outcomes, double alpha, bool keep_p) {
    RejectionCell cell;
    cell.n = n;
    for (const auto& o : outcomes) {
        if (!o.ok) {
            ++cell.failures;
            continue;
        }
        ++cell.successes;
        cell.theta.rejections += o.p_theta < alpha;
        cell.log_rank.rejections += o.p_log_rank < alpha;
        cell.gehan.rejections += o.p_gehan < alpha;
        if (keep_p) {
            cell.theta_p.push_back(o.p_theta);
            cell.log_rank_p.push_back(o.p_log_rank);
            cell.gehan_p.push_back(o.p_gehan);
        }
    }
    cell.theta.trials = cell.log_rank.trials = cell.gehan.trials = cell.successes;
    return cell;
}

// Draws n of `source` without replacement; the first n/2 drawn become
// population 2, the rest population 1.
std::vector<Observation> resample_split(std::span<const Observation> source, std::size_t n, RandomStream& rng) {
    std::vector<std::size_t> idx(source.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<Observation> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.below(idx.size() - k));
        std::swap(idx[k], idx[j]);
        Observation o = source[idx[k]];
        o.population = k < n / 2 ? Population::second : Population::first;
        out.push_back(o);
    }
    return out;
}

std::vector<Observation> population_rows(const Dataset& ds, Population p) {
    std::vector<Observation> rows;
    for (const auto& o : ds.observations()) {
        if (o.population == p) rows.push_back(o);
    }
    return rows;
}

}  // namespace

std::vector<double> sample_exponential(double rate, std::size_t n, RandomStream& rng) {
    if (!(rate > 0.0)) throw std::domain_error("sample_exponential: rate must be positive");
    std::vector<double> out(n);
    for (auto& x : out) x = draw_exponential(rate, rng);
    return out;
}

std::vector<double> sample_weibull(double shape, double scale, std::size_t n, RandomStream& rng) {
    if (!(shape > 0.0) || !(scale > 0.0)) throw std::domain_error("sample_weibull: shape and scale must be positive");
    std::vector<double> out(n);
    for (auto& x : out) x = draw_weibull(shape, scale, rng);
    return out;
}

double weibull_mean(double shape, double scale) { return scale * std::tgamma(1.0 + 1.0 / shape); }

double equal_mean_q2(double exp1_mean, double exp2_mean, double weibull_mean) {
    const double denom = weibull_mean - exp2_mean;
    if (denom == 0.0) throw std::domain_error("equal_mean_q2: component means coincide");
    return (exp1_mean - exp2_mean) / denom;
}

void MixtureSpec::validate() const {
    if (!(q2 >= 0.0 && q2 < 1.0)) throw std::domain_error("mixture: q2 must lie in [0, 1)");
    if (!(exp_rate > 0.0) || !(weibull_shape > 0.0) || !(weibull_scale > 0.0)) {
        throw std::domain_error("mixture: rates, shapes and scales must be positive");
    }
    if (censor_time && !(*censor_time > 0.0)) throw std::domain_error("mixture: censor_time must be positive");
}

double MixtureSpec::survival(double t) const {
    return (1.0 - q2) * std::exp(-exp_rate * t) + q2 * std::exp(-std::pow(t / weibull_scale, weibull_shape));
}

double MixtureSpec::mean() const {
    return (1.0 - q2) / exp_rate + q2 * weibull_mean(weibull_shape, weibull_scale);
}

void SimulationSpec::validate() const {
    if (sizes.empty()) throw std::domain_error("simulation: at least one sample size is required");
    for (auto n : sizes) {
        if (n < 2) throw std::domain_error("simulation: sample sizes must be at least 2");
    }
    if (replicates < 1) throw std::domain_error("simulation: replicates must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("simulation: alpha must lie in (0, 1)");
}

const char* to_string(Membership m) noexcept { return m == Membership::fixed ? "fixed" : "binomial"; }

const char* to_string(Experiment e) noexcept {
    switch (e) {
        case Experiment::power: return "power";
        case Experiment::type1_resample: return "type1_resample";
        case Experiment::sampling_distribution: return "sampling_distribution";
        case Experiment::estimator_mse: return "estimator_mse";
    }
    return "unknown";
}

double RejectionRate::rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(rejections) / static_cast<double>(trials);
}

double RejectionRate::standard_error() const {
    if (trials == 0) return 0.0;
    const double r = rate();
    return std::sqrt(r * (1.0 - r) / static_cast<double>(trials));
}

std::vector<Observation> draw_mixture(const MixtureSpec& mix, std::size_t n, Membership membership,
                                      Population population, RandomStream& rng) {
    mix.validate();
    const auto fixed_second =
        static_cast<std::size_t>(std::llround(mix.q2 * static_cast<double>(n)));
    std::vector<Observation> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const bool weibull = membership == Membership::binomial ? rng.bernoulli(mix.q2) : k < fixed_second;
        const double t = weibull ? draw_weibull(mix.weibull_shape, mix.weibull_scale, rng)
                                 : draw_exponential(mix.exp_rate, rng);
        Observation o{t, true, weibull ? 2 : 1, population};
        if (mix.censor_time && t > *mix.censor_time) {
            o.time = *mix.censor_time;
            o.event = false;
        }
        out.push_back(o);
    }
    return out;
}

PowerResult run_power_experiment(const SimulationSpec& spec, const MixtureSpec& mix, const PowerOptions& options) {
    spec.validate();
    mix.validate();
    if (!(options.reference_rate > 0.0)) throw std::domain_error("power: reference rate must be positive");

    MixtureSpec reference;
    if (options.reference_mixture) {
        reference = *options.reference_mixture;
    } else {
        // Homogeneous exponential population; cohort labels follow the same
        // membership rule but do not affect lifetimes.
        reference = mix;
        reference.exp_rate = options.reference_rate;
        reference.weibull_shape = 1.0;
        reference.weibull_scale = 1.0 / options.reference_rate;
    }

    PowerResult result{spec, mix, options, {}};
    for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
        const std::size_t n = spec.sizes[s];
        std::vector<Outcome> outcomes(spec.replicates);
        detail::parallel_for(spec.replicates, spec.threads, [&](std::size_t r) {
            RandomStream rng(spec.seed, stream_id(s, r));
            auto obs = draw_mixture(reference, n, options.membership, Population::first, rng);
            auto second = draw_mixture(mix, n, options.membership, Population::second, rng);
            obs.insert(obs.end(), second.begin(), second.end());
            outcomes[r] = evaluate(std::move(obs), {}, spec.alpha, spec.tau_rule, true);
        });
        result.cells.push_back(summarize(n, outcomes, spec.alpha, false));
    }
    return result;
}

Type1Result run_type1_resample(const Dataset& ds, Population population, const SimulationSpec& spec) {
    spec.validate();
    const auto source = population_rows(ds, population);
    for (auto n : spec.sizes) {
        if (n > source.size()) throw std::domain_error("type1: sample size exceeds population size");
    }
    Type1Result result{spec, population, {}};
    for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
        const std::size_t n = spec.sizes[s];
        std::vector<Outcome> outcomes(spec.replicates);
        detail::parallel_for(spec.replicates, spec.threads, [&](std::size_t r) {
            RandomStream rng(spec.seed, stream_id(s, r));
            outcomes[r] = evaluate(resample_split(source, n, rng), ds.cohort_names(), spec.alpha, spec.tau_rule, true);
        });
        result.cells.push_back(summarize(n, outcomes, spec.alpha, true));
    }
    return result;
}

SamplingResult run_sampling_distribution(const Dataset& ds, Population population, std::size_t size,
                                         std::size_t replicates, std::uint64_t seed, unsigned threads,
                                         TauRule rule) {
    if (replicates < 1) throw std::domain_error("sampling: replicates must be >= 1");
    const auto source = population_rows(ds, population);
    if (size < 2 || size > source.size()) throw std::domain_error("sampling: size must lie in [2, population size]");

    std::vector<Outcome> outcomes(replicates);
    detail::parallel_for(replicates, threads, [&](std::size_t r) {
        RandomStream rng(seed, stream_id(0, r));
        outcomes[r] = evaluate(resample_split(source, size, rng), ds.cohort_names(), 0.05, rule, false);
    });

    SamplingResult out;
    out.size = size;
    out.replicates = replicates;
    out.seed = seed;
    out.tau_rule = rule;
    for (const auto& o : outcomes) {
        if (!o.ok) {
            ++out.failures;
            continue;
        }
        if (out.thetas.empty()) out.reference_sigma2 = o.sigma2;
        out.thetas.push_back(o.theta);
    }
    if (out.thetas.empty()) throw DegenerateError("sampling: every replicate failed");
    out.mean = std::accumulate(out.thetas.begin(), out.thetas.end(), 0.0) / static_cast<double>(out.thetas.size());
    out.ks_statistic = ks_statistic_normal(out.thetas, 0.0, std::sqrt(out.reference_sigma2));
    return out;
}

MseResult run_estimator_mse(const MixtureSpec& mix, const SimulationSpec& spec, std::vector<double> grid) {
    spec.validate();
    mix.validate();
    if (grid.empty()) throw std::domain_error("mse: time grid is empty");
    for (double t : grid) {
        if (!(t >= 0.0)) throw std::domain_error("mse: grid times must be >= 0");
    }

    MseResult result;
    result.mixture = mix;
    result.spec = spec;
    result.grid = grid;
    for (double t : grid) result.truth.push_back(mix.survival(t));

    const std::size_t g = grid.size();
    for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
        const std::size_t n = spec.sizes[s];
        // [replicate][grid] for each estimator.
        std::vector<double> weighted(spec.replicates * g), plain(spec.replicates * g);
        detail::parallel_for(spec.replicates, spec.threads, [&](std::size_t r) {
            RandomStream rng(spec.seed, stream_id(s, r));
            const auto obs = draw_mixture(mix, n, Membership::binomial, Population::first, rng);
            std::vector<TimeEvent> all, by_cohort[2];
            for (const auto& o : obs) {
                all.push_back({o.time, o.event});
                by_cohort[o.cohort == 2 ? 1 : 0].push_back({o.time, o.event});
            }
            std::vector<double> coeffs;
            std::vector<StepFunction> curves;
            for (const auto& c : by_cohort) {
                if (c.empty()) continue;
                coeffs.push_back(static_cast<double>(c.size()) / static_cast<double>(n));
                curves.push_back(km_estimate(c).surv);
            }
            const StepFunction w = linear_combine(coeffs, curves);
            const StepFunction km = km_estimate(all).surv;
            for (std::size_t k = 0; k < g; ++k) {
                weighted[r * g + k] = w.eval(grid[k]);
                plain[r * g + k] = km.eval(grid[k]);
            }
        });

        MseCell cell;
        cell.n = n;
        auto moments = [&](const std::vector<double>& v, std::vector<double>& mean, std::vector<double>& var,
                           std::vector<double>& mse) {
            mean.assign(g, 0.0);
            var.assign(g, 0.0);
            mse.assign(g, 0.0);
            const double reps = static_cast<double>(spec.replicates);
            for (std::size_t k = 0; k < g; ++k) {
                double sum = 0.0;
                for (std::size_t r = 0; r < spec.replicates; ++r) sum += v[r * g + k];
                mean[k] = sum / reps;
                double ss = 0.0, se = 0.0;
                for (std::size_t r = 0; r < spec.replicates; ++r) {
                    const double x = v[r * g + k];
                    ss += (x - mean[k]) * (x - mean[k]);
                    se += (x - result.truth[k]) * (x - result.truth[k]);
                }
                var[k] = spec.replicates > 1 ? ss / (reps - 1.0) : 0.0;
                mse[k] = se / reps;
            }
        };
        moments(weighted, cell.weighted_mean, cell.weighted_variance, cell.weighted_mse);
        moments(plain, cell.km_mean, cell.km_variance, cell.km_mse);
        result.cells.push_back(std::move(cell));
    }
    return result;
}

std::vector<double> linear_grid(double upper, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {0.0};
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k] = upper * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    return out;
}

double ks_statistic_normal(std::span<const double> sample, double mean, double sd) {
    if (sample.empty()) throw std::domain_error("ks_statistic_normal: empty sample");
    if (!(sd > 0.0)) throw std::domain_error("ks_statistic_normal: sd must be positive");
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = normal_cdf((x[i] - mean) / sd);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

}  // namespace survtheta

#include "generators.hpp"

#include <cmath>
#include <utility>

namespace survtheta::testing {

namespace {

double draw_time(RandomStream& rng, double rate, bool ties) {
    double t = -std::log(rng.uniform()) / rate;
    if (ties) t = std::ceil(t * 4.0) / 4.0;  // quarter-unit grid, always > 0
    return t;
}

bool has_interior_event(const Dataset& ds) {
    for (std::size_t z = 0; z < ds.cohort_count(); ++z) {
        bool found = false;
        for (const auto& o : ds.pooled_cohort(z)) {
            if (o.event && o.time < ds.tau(z)) found = true;
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

std::vector<TimeEvent> random_sample(RandomStream& rng, std::size_t n, double censor_prob, bool ties) {
    std::vector<TimeEvent> out(n);
    const double rate = 0.2 + 2.0 * rng.uniform();
    for (auto& o : out) {
        o.time = draw_time(rng, rate, ties);
        o.event = !rng.bernoulli(censor_prob);
    }
    return out;
}

Dataset random_dataset(RandomStream& rng, const GenOptions& opt) {
    for (;;) {
        const std::size_t d = 1 + rng.below(opt.max_cohorts);
        const double censor = opt.censor_prob * rng.uniform();
        const bool ties = opt.allow_ties && rng.bernoulli(0.3);
        std::vector<Observation> obs;
        for (std::size_t z = 0; z < d; ++z) {
            const double rate = 0.2 + 2.0 * rng.uniform();
            for (Population p : {Population::first, Population::second}) {
                const std::size_t n = opt.min_cell + rng.below(opt.max_cell - opt.min_cell + 1);
                for (std::size_t i = 0; i < n; ++i) {
                    obs.push_back({draw_time(rng, rate, ties), !rng.bernoulli(censor), static_cast<int>(z), p});
                }
            }
        }
        // shuffle so cohort registry order and row order vary
        for (std::size_t i = obs.size(); i > 1; --i) std::swap(obs[i - 1], obs[rng.below(i)]);
        Dataset ds = Dataset::validate(std::move(obs));
        if (has_interior_event(ds)) return ds;
    }
}

Dataset random_uncensored_single(RandomStream& rng, std::size_t n1, std::size_t n2) {
    std::vector<Observation> obs;
    for (Population p : {Population::first, Population::second}) {
        const std::size_t n = p == Population::first ? n1 : n2;
        for (std::size_t i = 0; i < n; ++i) obs.push_back({draw_time(rng, 1.0, false), true, 0, p});
    }
    return Dataset::validate(std::move(obs));
}

Dataset swap_populations(const Dataset& ds) {
    std::vector<Observation> obs(ds.observations().begin(), ds.observations().end());
    for (auto& o : obs) o.population = other(o.population);
    return Dataset::validate(std::move(obs), ds.cohort_names());
}

Dataset rescale_times(const Dataset& ds, double c) {
    std::vector<Observation> obs(ds.observations().begin(), ds.observations().end());
    for (auto& o : obs) o.time *= c;
    return Dataset::validate(std::move(obs), ds.cohort_names());
}

}  // namespace survtheta::testing

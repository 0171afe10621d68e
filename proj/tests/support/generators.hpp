#pragma once

#include <cstdint>
#include <vector>

#include "survtheta/dataset.hpp"
#include "survtheta/rng.hpp"

namespace survtheta::testing {

struct GenOptions {
    std::size_t max_cohorts = 3;
    std::size_t min_cell = 2;
    std::size_t max_cell = 25;
    double censor_prob = 0.3;  // upper bound; the actual rate is drawn per dataset
    bool allow_ties = true;    // round times to a coarse grid for some datasets
};

std::vector<TimeEvent> random_sample(RandomStream& rng, std::size_t n, double censor_prob, bool ties);

// A dataset the validator accepts, with every cohort in both populations and at
// least one event strictly inside each cohort's horizon (so the variance is positive).
Dataset random_dataset(RandomStream& rng, const GenOptions& opt = {});

// Same as random_dataset but with no censoring and a single cohort.
Dataset random_uncensored_single(RandomStream& rng, std::size_t n1, std::size_t n2);

Dataset swap_populations(const Dataset& ds);
Dataset rescale_times(const Dataset& ds, double c);

}  // namespace survtheta::testing

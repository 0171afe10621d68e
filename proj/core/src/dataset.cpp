#include "survtheta/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "survtheta/errors.hpp"

namespace survtheta {

Dataset Dataset::validate(std::vector<Observation> raw, std::vector<std::string> cohort_names) {
    Dataset ds;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const auto& o = raw[k];
        const std::string where = "observation " + std::to_string(k + 1);
        if (!std::isfinite(o.time) || !(o.time > 0.0)) {
            throw ValidationError(where + ": time must be positive and finite");
        }
        const int pop = static_cast<int>(o.population);
        if (pop != 1 && pop != 2) {
            throw ValidationError(where + ": unknown population " + std::to_string(pop));
        }
        if (!cohort_names.empty() &&
            (o.cohort < 0 || static_cast<std::size_t>(o.cohort) >= cohort_names.size())) {
            throw ValidationError(where + ": cohort label " + std::to_string(o.cohort) +
                                  " has no registered name");
        }
        if (std::find(ds.cohorts_.begin(), ds.cohorts_.end(), o.cohort) == ds.cohorts_.end()) {
            ds.cohorts_.push_back(o.cohort);
        }
    }
    ds.names_ = std::move(cohort_names);

    const std::size_t d = ds.cohorts_.size();
    for (auto& c : ds.cells_) c.assign(d, 0);
    for (auto& m : ds.max_time_) m.assign(d, 0.0);
    for (const auto& o : raw) {
        const std::size_t i = index_of(o.population);
        const std::size_t z = ds.cohort_index(o.cohort);
        ++ds.cells_[i][z];
        ++ds.totals_[i];
        ds.max_time_[i][z] = std::max(ds.max_time_[i][z], o.time);
    }
    ds.observations_ = std::move(raw);

    if (ds.totals_[0] == 0 || ds.totals_[1] == 0) {
        throw ValidationError("both populations need at least one observation");
    }
    std::vector<std::string> missing;
    for (std::size_t z = 0; z < d; ++z) {
        if (ds.cells_[0][z] == 0 || ds.cells_[1][z] == 0) missing.push_back(ds.cohort_name(z));
    }
    if (!missing.empty()) {
        std::string msg = "cohorts without members in both populations:";
        for (const auto& m : missing) msg += " " + m;
        throw ValidationError(msg, std::move(missing));
    }
    return ds;
}

std::size_t Dataset::cohort_index(int label) const {
    auto it = std::find(cohorts_.begin(), cohorts_.end(), label);
    if (it == cohorts_.end()) throw std::out_of_range("unknown cohort label " + std::to_string(label));
    return static_cast<std::size_t>(it - cohorts_.begin());
}

std::string Dataset::cohort_name(std::size_t index) const {
    const int label = cohorts_.at(index);
    if (!names_.empty()) return names_.at(static_cast<std::size_t>(label));
    return std::to_string(label);
}

std::vector<TimeEvent> Dataset::cell(Population p, std::size_t cohort) const {
    const int label = cohorts_.at(cohort);
    std::vector<TimeEvent> out;
    out.reserve(count(p, cohort));
    for (const auto& o : observations_) {
        if (o.population == p && o.cohort == label) out.push_back({o.time, o.event});
    }
    return out;
}

std::vector<TimeEvent> Dataset::pooled_cohort(std::size_t cohort) const {
    const int label = cohorts_.at(cohort);
    std::vector<TimeEvent> out;
    for (const auto& o : observations_) {
        if (o.cohort == label) out.push_back({o.time, o.event});
    }
    return out;
}

std::vector<TimeEvent> Dataset::population(Population p) const {
    std::vector<TimeEvent> out;
    out.reserve(count(p));
    for (const auto& o : observations_) {
        if (o.population == p) out.push_back({o.time, o.event});
    }
    return out;
}

std::vector<double> Dataset::prevalence(Population p) const {
    return survtheta::prevalence(cells_[index_of(p)]);
}

double Dataset::tau(std::size_t cohort) const {
    return std::min(max_time_[0].at(cohort), max_time_[1].at(cohort));
}

double Dataset::tau() const {
    double t = tau(0);
    for (std::size_t z = 1; z < cohorts_.size(); ++z) t = std::min(t, tau(z));
    return t;
}

bool Dataset::has_censoring() const noexcept {
    return std::any_of(observations_.begin(), observations_.end(), [](const Observation& o) { return !o.event; });
}

std::vector<double> prevalence(std::span<const std::size_t> counts) {
    const std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    if (n == 0) throw std::domain_error("prevalence: population is empty");
    std::vector<double> q(counts.size());
    for (std::size_t z = 0; z < counts.size(); ++z) {
        q[z] = static_cast<double>(counts[z]) / static_cast<double>(n);
    }
    return q;
}

}  // namespace survtheta

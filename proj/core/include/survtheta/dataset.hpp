#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace survtheta {

enum class Population : int { first = 1, second = 2 };

constexpr std::size_t index_of(Population p) noexcept { return p == Population::first ? 0 : 1; }
constexpr Population other(Population p) noexcept {
    return p == Population::first ? Population::second : Population::first;
}

/// Time-to-event record without covariates: the input to product-limit
/// estimators and rank tests.
struct TimeEvent {
    double time = 0.0;
    bool event = false;  // false = right-censored

    friend bool operator==(const TimeEvent&, const TimeEvent&) = default;
};

struct Observation {
    double time = 0.0;
    bool event = false;
    int cohort = 0;  // opaque label; registry order is first appearance
    Population population = Population::first;

    friend bool operator==(const Observation&, const Observation&) = default;
};

/// Validated, immutable two-population, cohort-stratified survival data.
///
/// Every cohort is represented in both populations so each (population,
/// cohort) cell has at least one member. Counts are derived on construction.
class Dataset {
public:
    /// Validates raw observations. `cohort_names` optionally maps cohort labels
    /// (indices into it) to display names; otherwise labels print as integers.
    /// Throws ValidationError.
    static Dataset validate(std::vector<Observation> raw, std::vector<std::string> cohort_names = {});

    std::span<const Observation> observations() const noexcept { return observations_; }

    /// Cohort labels in first-appearance order.
    std::span<const int> cohorts() const noexcept { return cohorts_; }
    std::size_t cohort_count() const noexcept { return cohorts_.size(); }
    /// Position of `label` in cohorts(); throws std::out_of_range.
    std::size_t cohort_index(int label) const;
    std::string cohort_name(std::size_t index) const;
    const std::vector<std::string>& cohort_names() const noexcept { return names_; }

    std::size_t size() const noexcept { return observations_.size(); }
    std::size_t count(Population p) const noexcept { return totals_[index_of(p)]; }
    std::size_t count(Population p, std::size_t cohort) const { return cells_[index_of(p)].at(cohort); }

    /// Observations of one (population, cohort) cell.
    std::vector<TimeEvent> cell(Population p, std::size_t cohort) const;
    /// Both populations' observations of one cohort.
    std::vector<TimeEvent> pooled_cohort(std::size_t cohort) const;
    /// All observations of one population, ignoring cohorts.
    std::vector<TimeEvent> population(Population p) const;

    /// Estimated cohort prevalences q^(i), indexed like cohorts().
    std::vector<double> prevalence(Population p) const;

    /// Support horizon of a cohort: min over populations of the largest
    /// observed time (event or censoring) in that cohort.
    double tau(std::size_t cohort) const;
    /// Smallest cohort horizon.
    double tau() const;

    bool has_censoring() const noexcept;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    Dataset() = default;

    std::vector<Observation> observations_;
    std::vector<int> cohorts_;
    std::vector<std::string> names_;
    std::size_t totals_[2] = {0, 0};
    std::vector<std::size_t> cells_[2];
    std::vector<double> max_time_[2];
};

/// q_z = n_z / n for a vector of cohort counts. Throws std::domain_error when
/// the counts sum to zero.
std::vector<double> prevalence(std::span<const std::size_t> counts);

}  // namespace survtheta

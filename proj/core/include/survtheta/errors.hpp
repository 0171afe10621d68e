#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace survtheta {

// Input data is structurally unusable (bad times, unknown population,
// cohorts that are missing from one population).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what,
                             std::vector<std::string> offending_cohorts = {})
        : std::invalid_argument(what), offending_cohorts_(std::move(offending_cohorts)) {}

    const std::vector<std::string>& offending_cohorts() const noexcept {
        return offending_cohorts_;
    }

private:
    std::vector<std::string> offending_cohorts_;
};

// Data is valid but carries no statistical information for the requested
// quantity (no events, zero variance).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace survtheta

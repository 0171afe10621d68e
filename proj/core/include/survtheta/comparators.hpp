#pragma once

#include <span>
#include <string>

#include "survtheta/dataset.hpp"

namespace survtheta {

enum class RankMethod { log_rank, gehan_wilcoxon };

const char* to_string(RankMethod m) noexcept;

/// Two-group weighted log-rank result. `statistic` is the standardized Z
/// (score / sqrt(variance)); positive when group 1 has more events than
/// expected under equal hazards.
struct RankTestReport {
    RankMethod method = RankMethod::log_rank;
    double statistic = 0.0;
    double p_value = 1.0;
    double score = 0.0;     // sum_t w_t (d1_t - d_t r1_t / r_t)
    double variance = 0.0;  // sum_t w_t^2 * hypergeometric variance
};

/// Mantel-Haenszel log-rank test (weight 1). Throws std::domain_error for an
/// empty group and DegenerateError when there are no events or the variance
/// is zero.
RankTestReport log_rank(std::span<const TimeEvent> group1, std::span<const TimeEvent> group2);

/// Gehan-Breslow generalized Wilcoxon: weights equal the total number at risk.
RankTestReport gehan_wilcoxon(std::span<const TimeEvent> group1, std::span<const TimeEvent> group2);

RankTestReport weighted_log_rank(std::span<const TimeEvent> group1, std::span<const TimeEvent> group2,
                                 RankMethod method);

}  // namespace survtheta

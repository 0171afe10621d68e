#include "survtheta/comparators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "survtheta/errors.hpp"
#include "survtheta/normal.hpp"

namespace survtheta {

const char* to_string(RankMethod m) noexcept {
    return m == RankMethod::gehan_wilcoxon ? "gehan_wilcoxon" : "log_rank";
}

RankTestReport weighted_log_rank(std::span<const TimeEvent> group1, std::span<const TimeEvent> group2,
                                 RankMethod method) {
    if (group1.empty() || group2.empty()) throw std::domain_error("rank test: both groups need observations");

    struct Entry {
        double time;
        bool event;
        bool first;
    };
    std::vector<Entry> all;
    all.reserve(group1.size() + group2.size());
    for (const auto& o : group1) all.push_back({o.time, o.event, true});
    for (const auto& o : group2) all.push_back({o.time, o.event, false});
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return a.time < b.time; });

    double r = static_cast<double>(all.size());
    double r1 = static_cast<double>(group1.size());
    double score = 0.0;
    double variance = 0.0;
    for (std::size_t k = 0; k < all.size();) {
        const double t = all[k].time;
        double d = 0.0, d1 = 0.0, leaving = 0.0, leaving1 = 0.0;
        for (; k < all.size() && all[k].time == t; ++k) {
            leaving += 1.0;
            if (all[k].first) leaving1 += 1.0;
            if (all[k].event) {
                d += 1.0;
                if (all[k].first) d1 += 1.0;
            }
        }
        if (d > 0.0) {
            const double w = method == RankMethod::gehan_wilcoxon ? r : 1.0;
            const double frac = r1 / r;
            score += w * (d1 - d * frac);
            if (r > 1.0) variance += w * w * d * frac * (1.0 - frac) * (r - d) / (r - 1.0);
        }
        r -= leaving;
        r1 -= leaving1;
    }

    if (variance <= 0.0) {
        throw DegenerateError(std::string(to_string(method)) + ": no informative events");
    }
    RankTestReport out;
    out.method = method;
    out.score = score;
    out.variance = variance;
    out.statistic = score / std::sqrt(variance);
    out.p_value = two_sided_p(out.statistic);
    return out;
}

RankTestReport log_rank(std::span<const TimeEvent> group1, std::span<const TimeEvent> group2) {
    return weighted_log_rank(group1, group2, RankMethod::log_rank);
}

RankTestReport gehan_wilcoxon(std::span<const TimeEvent> group1, std::span<const TimeEvent> group2) {
    return weighted_log_rank(group1, group2, RankMethod::gehan_wilcoxon);
}

}  // namespace survtheta

#include "survtheta/theta_test.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "survtheta/errors.hpp"
#include "survtheta/normal.hpp"

namespace survtheta {

double ThetaReport::sigma() const { return std::sqrt(sigma2); }

double ThetaReport::z_score() const { return theta / sigma(); }

ThetaAnalysis::ThetaAnalysis(Dataset ds, TauRule rule) : ds_(std::move(ds)), rule_(rule) {
    const std::size_t d = ds_.cohort_count();
    const double common = ds_.tau();
    horizon_.resize(d);
    for (std::size_t z = 0; z < d; ++z) horizon_[z] = rule_ == TauRule::common ? common : ds_.tau(z);

    for (Population p : {Population::first, Population::second}) {
        const std::size_t i = index_of(p);
        q_[i] = ds_.prevalence(p);
        cell_[i].reserve(d);
        censor_[i].reserve(d);
        for (std::size_t z = 0; z < d; ++z) {
            const auto obs = ds_.cell(p, z);
            cell_[i].push_back(km_estimate(obs));
            censor_[i].push_back(censoring_km(obs));
        }
    }
    pooled_.reserve(d);
    for (std::size_t z = 0; z < d; ++z) pooled_.push_back(pooled_cohort_km(ds_, z));
}

const SurvivalCurve& ThetaAnalysis::cell_curve(Population p, std::size_t cohort) const {
    return cell_[index_of(p)].at(cohort);
}

const SurvivalCurve& ThetaAnalysis::censoring_curve(Population p, std::size_t cohort) const {
    return censor_[index_of(p)].at(cohort);
}

double ThetaAnalysis::theta() const {
    const double n1 = static_cast<double>(ds_.count(Population::first));
    const double n2 = static_cast<double>(ds_.count(Population::second));
    double area = 0.0;
    for (std::size_t z = 0; z < ds_.cohort_count(); ++z) {
        const std::array<double, 2> coeffs{q_[0][z], -q_[1][z]};
        const std::array<StepFunction, 2> curves{cell_[0][z].surv, cell_[1][z].surv};
        area += linear_combine(coeffs, curves).integrate(0.0, horizon_[z]);
    }
    return std::sqrt(n1 * n2 / (n1 + n2)) * area;
}

double ThetaAnalysis::weight(std::size_t cohort, double t) const {
    if (!(t > 0.0) || t > ds_.tau(cohort)) {
        throw std::domain_error("weight: t must lie in (0, tau_z]");
    }
    const double n1 = static_cast<double>(ds_.count(Population::first));
    const double n2 = static_cast<double>(ds_.count(Population::second));
    const double p1 = n1 / (n1 + n2);
    const double p2 = n2 / (n1 + n2);
    const double c1 = censor_[0].at(cohort).surv.eval_left(t);
    const double c2 = censor_[1].at(cohort).surv.eval_left(t);
    if (!(c1 > 0.0) || !(c2 > 0.0)) {
        throw std::logic_error("weight: censoring curve vanished before tau_z in cohort " +
                               ds_.cohort_name(cohort));
    }
    return (p1 * c1 * q_[1][cohort] + p2 * c2 * q_[0][cohort]) / (c1 * c2);
}

double ThetaAnalysis::variance_bracket() const {
    const double n1 = static_cast<double>(ds_.count(Population::first));
    const double n2 = static_cast<double>(ds_.count(Population::second));
    const double p[2] = {n1 / (n1 + n2), n2 / (n1 + n2)};
    double total = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        double second = 0.0;
        double first = 0.0;
        for (std::size_t z = 0; z < ds_.cohort_count(); ++z) {
            const double phi = phi_integral(pooled_[z], 0.0, horizon_[z]);
            second += q_[i][z] * phi * phi;
            first += q_[i][z] * phi;
        }
        total += (1.0 - p[i]) * (second - first * first);
    }
    return total;
}

double ThetaAnalysis::stieltjes_term(std::size_t z) const {
    const StepFunction& s = pooled_[z].surv;
    const double h = horizon_[z];
    return s.stieltjes_sum(
        [&](double t) {
            const double phi = phi_integral(s, t, h);
            const double st = s.eval(t);
            double ratio = 0.0;
            if (st > 0.0) {
                ratio = phi / st;
            } else if (phi != 0.0) {
                throw std::logic_error("sigma2: pooled survival reached 0 before the horizon in cohort " +
                                       ds_.cohort_name(z));
            }
            return weight(z, t) * ratio * ratio;
        },
        0.0, h);
}

double ThetaAnalysis::sigma2() const {
    bool any_event = false;
    for (const auto& o : ds_.observations()) any_event = any_event || o.event;
    if (!any_event) throw DegenerateError("variance is undefined: no events observed");

    double v = variance_bracket();
    for (std::size_t z = 0; z < ds_.cohort_count(); ++z) v -= stieltjes_term(z);
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw DegenerateError("variance estimate is not positive (" + std::to_string(v) + ")");
    }
    return v;
}

ThetaReport ThetaAnalysis::report(double alpha) const {
    ThetaReport r;
    r.theta = theta();
    r.sigma2 = sigma2();
    r.tau = ds_.tau();
    r.tau_rule = rule_;
    r.n1 = ds_.count(Population::first);
    r.n2 = ds_.count(Population::second);
    const double n = static_cast<double>(r.n1 + r.n2);
    r.p1 = static_cast<double>(r.n1) / n;
    r.p2 = static_cast<double>(r.n2) / n;
    for (std::size_t z = 0; z < ds_.cohort_count(); ++z) {
        CohortDiagnostics c;
        c.name = ds_.cohort_name(z);
        c.tau = ds_.tau(z);
        c.horizon = horizon_[z];
        c.q1 = q_[0][z];
        c.q2 = q_[1][z];
        c.phi = phi_integral(pooled_[z], 0.0, horizon_[z]);
        c.n1 = ds_.count(Population::first, z);
        c.n2 = ds_.count(Population::second, z);
        r.cohorts.push_back(std::move(c));
    }
    return finalize_report(std::move(r), alpha);
}

ThetaReport finalize_report(ThetaReport r, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
    if (!(r.sigma2 > 0.0)) throw DegenerateError("variance must be positive");
    r.alpha = alpha;
    const double sigma = std::sqrt(r.sigma2);
    const double zq = normal_quantile(1.0 - alpha / 2.0);
    r.ci_lower = r.theta - zq * sigma;
    r.ci_upper = r.theta + zq * sigma;
    r.p_value = two_sided_p(r.theta / sigma);
    return r;
}

double theta_statistic(const Dataset& ds, TauRule rule) { return ThetaAnalysis(ds, rule).theta(); }

double weight_w(const Dataset& ds, std::size_t cohort, double t) { return ThetaAnalysis(ds).weight(cohort, t); }

double sigma2_estimate(const Dataset& ds, TauRule rule) { return ThetaAnalysis(ds, rule).sigma2(); }

ThetaReport theta_test(const Dataset& ds, const ThetaOptions& options) {
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
    return ThetaAnalysis(ds, options.tau_rule).report(options.alpha);
}

const char* to_string(TauRule rule) noexcept {
    return rule == TauRule::common ? "common" : "per_cohort";
}

}  // namespace survtheta

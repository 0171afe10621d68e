#include "survtheta/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace survtheta {

StepFunction::StepFunction(double initial_value) : initial_(initial_value) {}

StepFunction::StepFunction(double initial_value, std::vector<double> knots, std::vector<double> values)
    : initial_(initial_value), knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.size() != values_.size()) {
        throw std::invalid_argument("StepFunction: knots and values differ in length");
    }
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        if (!std::isfinite(knots_[i]) || knots_[i] < 0.0) {
            throw std::invalid_argument("StepFunction: knot " + std::to_string(i) +
                                        " is negative or not finite");
        }
        if (i > 0 && !(knots_[i - 1] < knots_[i])) {
            throw std::invalid_argument("StepFunction: knots must be strictly increasing");
        }
    }
}

double StepFunction::eval(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("StepFunction::eval: t must be >= 0");
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    if (it == knots_.begin()) return initial_;
    return values_[static_cast<std::size_t>(it - knots_.begin()) - 1];
}

double StepFunction::eval_left(double t) const {
    if (!(t > 0.0)) throw std::domain_error("StepFunction::eval_left: t must be > 0");
    auto it = std::lower_bound(knots_.begin(), knots_.end(), t);
    if (it == knots_.begin()) return initial_;
    return values_[static_cast<std::size_t>(it - knots_.begin()) - 1];
}

double StepFunction::integrate(double a, double b) const {
    if (!(a >= 0.0) || !(b >= a) || !std::isfinite(b)) {
        throw std::domain_error("StepFunction::integrate: need 0 <= a <= b < inf");
    }
    if (a == b) return 0.0;
    // First knot strictly after a; the piece containing a starts before it.
    auto it = std::upper_bound(knots_.begin(), knots_.end(), a);
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    double left = a;
    double value = (i == 0) ? initial_ : values_[i - 1];
    double total = 0.0;
    for (; i < knots_.size() && knots_[i] < b; ++i) {
        total += value * (knots_[i] - left);
        left = knots_[i];
        value = values_[i];
    }
    total += value * (b - left);
    return total;
}

double StepFunction::stieltjes_sum(const std::function<double(double)>& h) const {
    double total = 0.0;
    double prev = initial_;
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const double jump = values_[i] - prev;
        if (jump != 0.0) total += jump * h(knots_[i]);
        prev = values_[i];
    }
    return total;
}

double StepFunction::stieltjes_sum(const std::function<double(double)>& h, double a, double b) const {
    double total = 0.0;
    double prev = initial_;
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const double t = knots_[i];
        const double jump = values_[i] - prev;
        prev = values_[i];
        if (t <= a) continue;
        if (t > b) break;
        if (jump != 0.0) total += jump * h(t);
    }
    return total;
}

std::vector<double> StepFunction::jump_times() const {
    std::vector<double> out;
    double prev = initial_;
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        if (values_[i] != prev) out.push_back(knots_[i]);
        prev = values_[i];
    }
    return out;
}

StepFunction StepFunction::scaled(double c) const {
    std::vector<double> v(values_);
    for (auto& x : v) x *= c;
    return StepFunction(initial_ * c, knots_, std::move(v));
}

StepFunction linear_combine(std::span<const double> coeffs, std::span<const StepFunction> fs) {
    if (fs.empty() || coeffs.size() != fs.size()) {
        throw std::domain_error("linear_combine: need equal, nonzero numbers of coefficients and functions");
    }
    std::vector<double> grid;
    for (const auto& f : fs) grid.insert(grid.end(), f.knots().begin(), f.knots().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    double initial = 0.0;
    for (std::size_t k = 0; k < fs.size(); ++k) initial += coeffs[k] * fs[k].initial_value();

    // Walk every input in lockstep with the merged grid.
    std::vector<std::size_t> cursor(fs.size(), 0);
    std::vector<double> values(grid.size(), 0.0);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double sum = 0.0;
        for (std::size_t k = 0; k < fs.size(); ++k) {
            auto kn = fs[k].knots();
            while (cursor[k] < kn.size() && kn[cursor[k]] <= grid[g]) ++cursor[k];
            const double v = cursor[k] == 0 ? fs[k].initial_value() : fs[k].values()[cursor[k] - 1];
            sum += coeffs[k] * v;
        }
        values[g] = sum;
    }
    return StepFunction(initial, std::move(grid), std::move(values));
}

}  // namespace survtheta

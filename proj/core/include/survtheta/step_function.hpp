#pragma once

#include <functional>
#include <span>
#include <vector>

namespace survtheta {

/// Right-continuous piecewise-constant function on [0, inf).
///
/// The value on [knots[i], knots[i+1]) is values[i]; on [0, knots[0]) it is
/// the initial value. Past the last knot the function stays at the last value.
/// Instances are immutable; every operation returns a new function.
class StepFunction {
public:
    /// The constant function equal to `initial_value` everywhere.
    explicit StepFunction(double initial_value = 0.0);

    /// Throws std::invalid_argument unless knots are finite, >= 0, strictly
    /// increasing and the same length as values.
    StepFunction(double initial_value, std::vector<double> knots, std::vector<double> values);

    static StepFunction constant(double value) { return StepFunction(value); }

    double initial_value() const noexcept { return initial_; }
    std::span<const double> knots() const noexcept { return knots_; }
    std::span<const double> values() const noexcept { return values_; }
    bool is_constant() const noexcept { return knots_.empty(); }
    double last_value() const noexcept { return values_.empty() ? initial_ : values_.back(); }

    /// f(t). Throws std::domain_error for t < 0.
    double eval(double t) const;
    /// lim_{s -> t-} f(s). Throws std::domain_error for t <= 0.
    double eval_left(double t) const;

    double operator()(double t) const { return eval(t); }

    /// Exact integral over [a, b]. Throws std::domain_error unless 0 <= a <= b.
    double integrate(double a, double b) const;

    /// Sum over jump times t_j of (f(t_j) - f(t_j-)) * h(t_j).
    double stieltjes_sum(const std::function<double(double)>& h) const;
    /// As above, restricted to jumps in the half-open interval (a, b].
    double stieltjes_sum(const std::function<double(double)>& h, double a, double b) const;

    /// Times where the value actually changes.
    std::vector<double> jump_times() const;

    StepFunction scaled(double c) const;

    friend bool operator==(const StepFunction&, const StepFunction&) = default;

private:
    double initial_;
    std::vector<double> knots_;
    std::vector<double> values_;
};

/// Sum_i coeffs[i] * fs[i] on the union of input knots (exact time matches
/// are merged; no tolerance). Throws std::domain_error on empty or
/// mismatched input.
StepFunction linear_combine(std::span<const double> coeffs, std::span<const StepFunction> fs);

}  // namespace survtheta

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "survtheta/step_function.hpp"

using namespace survtheta;

TEST_CASE("eval is right-continuous") {
    const StepFunction f(1.0, {2.0}, {0.5});
    CHECK(f(2.0) == 0.5);
    CHECK(f(1.999) == 1.0);
    CHECK(f(0.0) == 1.0);
    CHECK(StepFunction::constant(3.5)(123.0) == 3.5);
    CHECK_THROWS_AS(f(-1.0), std::domain_error);
}

TEST_CASE("eval_left takes the limit from below") {
    const StepFunction f(1.0, {2.0}, {0.5});
    CHECK(f.eval_left(2.0) == 1.0);
    CHECK(f.eval_left(3.0) == 0.5);
    const StepFunction g(1.0, {1.0, 2.0}, {0.8, 0.4});
    CHECK(g.eval_left(2.0) == 0.8);
    CHECK(g.eval_left(1.0) == 1.0);
    CHECK_THROWS_AS(g.eval_left(0.0), std::domain_error);
}

TEST_CASE("constructor rejects malformed knots") {
    CHECK_THROWS(StepFunction(1.0, {2.0, 1.0}, {0.5, 0.2}));
    CHECK_THROWS(StepFunction(1.0, {1.0, 1.0}, {0.5, 0.2}));
    CHECK_THROWS(StepFunction(1.0, {1.0}, {}));
    CHECK_THROWS(StepFunction(1.0, {-1.0}, {0.5}));
}

TEST_CASE("linear_combine") {
    const StepFunction f(1.0, {1.0, 3.0}, {0.6, 0.2});
    const StepFunction g(2.0, {2.0}, {-1.0});

    SUBCASE("half plus half is the identity") {
        const std::vector<double> w{0.5, 0.5};
        const std::vector<StepFunction> fs{f, f};
        const StepFunction h = linear_combine(w, fs);
        for (double t : {0.0, 0.5, 1.0, 2.0, 3.0, 10.0}) CHECK(h(t) == doctest::Approx(f(t)));
    }
    SUBCASE("zero weight drops a term") {
        const std::vector<double> w{1.0, 0.0};
        const std::vector<StepFunction> fs{f, g};
        const StepFunction h = linear_combine(w, fs);
        for (double t : {0.0, 0.5, 1.0, 2.0, 3.0, 10.0}) CHECK(h(t) == f(t));
    }
    SUBCASE("indicator plus constant") {
        const std::vector<double> w{0.75, 0.25};
        const std::vector<StepFunction> fs{StepFunction(1.0, {1.0}, {0.0}), StepFunction::constant(1.0)};
        const StepFunction h = linear_combine(w, fs);
        CHECK(h(0.5) == 1.0);
        CHECK(h(1.0) == 0.25);
        CHECK(h(7.0) == 0.25);
    }
    SUBCASE("knot sets are merged") {
        const std::vector<double> w{1.0, 1.0};
        const std::vector<StepFunction> fs{f, g};
        const StepFunction h = linear_combine(w, fs);
        CHECK(h.knots().size() == 3);
        CHECK(h(2.5) == doctest::Approx(-0.4));
    }
    SUBCASE("size mismatch") {
        const std::vector<double> w{1.0};
        const std::vector<StepFunction> fs{f, g};
        CHECK_THROWS_AS(linear_combine(w, fs), std::domain_error);
    }
}

TEST_CASE("integrate") {
    const StepFunction f(1.0, {2.0, 4.0}, {0.5, 0.25});
    CHECK(f.integrate(0.0, 4.0) == 3.0);
    CHECK(f.integrate(1.5, 1.5) == 0.0);
    CHECK(f.integrate(1.0, 3.0) == doctest::Approx(1.5));
    CHECK(f.integrate(4.0, 8.0) == doctest::Approx(1.0));

    const StepFunction km(1.0, {1.0, 3.0, 5.0}, {0.8, 0.8 * 2.0 / 3.0, 0.0});
    CHECK(km.integrate(0.0, 5.0) == doctest::Approx(1.0 + 2 * 0.8 + 2 * 0.8 * 2.0 / 3.0).epsilon(1e-14));
    CHECK(km.integrate(0.0, 5.0) == doctest::Approx(11.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("stieltjes_sum over jumps") {
    const auto one = [](double) { return 1.0; };
    CHECK(StepFunction::constant(0.7).stieltjes_sum(one) == 0.0);
    CHECK(StepFunction(1.0, {1.0}, {0.5}).stieltjes_sum(one) == -0.5);

    const StepFunction km(1.0, {1.0, 3.0, 5.0}, {0.8, 0.8 * 2.0 / 3.0, 0.0});
    CHECK(km.stieltjes_sum(one) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(km.stieltjes_sum(one, 0.0, 3.0) == doctest::Approx(-1.0 + 0.8 * 2.0 / 3.0));
    CHECK(km.stieltjes_sum(one, 1.0, 3.0) == doctest::Approx(0.8 * 2.0 / 3.0 - 0.8));
    CHECK(km.stieltjes_sum([](double t) { return t; }) == doctest::Approx(-(0.2 + 3 * 0.8 / 3.0 + 5 * 0.8 * 2.0 / 3.0)));
    CHECK(km.jump_times() == std::vector<double>{1.0, 3.0, 5.0});
}

TEST_CASE("scaled multiplies every value") {
    const StepFunction f(1.0, {2.0}, {0.5});
    const StepFunction g = f.scaled(-2.0);
    CHECK(g(0.0) == -2.0);
    CHECK(g(3.0) == -1.0);
}

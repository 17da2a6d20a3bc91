#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cfilt/error.hpp"
#include "cfilt/nelder_mead.hpp"

#include <cmath>
#include <set>

using namespace cfilt;

TEST_CASE("quadratic bowl inside the box") {
    const auto f = [](std::span<const double> x) {
        return (x[0] - 0.3) * (x[0] - 0.3) + 2.0 * (x[1] - 0.7) * (x[1] - 0.7);
    };
    SimplexOptions o;
    o.max_evals = 400;
    const auto r = minimize_in_unit_box(f, {0.9, 0.1}, o);
    CHECK(r.x[0] == doctest::Approx(0.3).epsilon(1e-3));
    CHECK(r.x[1] == doctest::Approx(0.7).epsilon(1e-3));
    CHECK(r.value < 1e-8);
    CHECK(r.converged);
    CHECK(r.evaluations <= 400);
    CHECK(static_cast<int>(r.best_history.size()) == r.evaluations);
}

TEST_CASE("minimum on the boundary") {
    // Unconstrained minimum at (-1, 2); the box answer is (0, 1).
    const auto f = [](std::span<const double> x) { return (x[0] + 1) * (x[0] + 1) + (x[1] - 2) * (x[1] - 2); };
    SimplexOptions o;
    o.max_evals = 400;
    const auto r = minimize_in_unit_box(f, {0.5, 0.5}, o);
    CHECK(r.x[0] == doctest::Approx(0.0).epsilon(1e-4));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-4));
    for (double v : r.x) CHECK((v >= 0.0 && v <= 1.0));
}

TEST_CASE("rosenbrock scaled into the box") {
    const auto f = [](std::span<const double> x) {
        const double a = 4 * x[0] - 2, b = 4 * x[1] - 2;
        return 100 * (b - a * a) * (b - a * a) + (1 - a) * (1 - a);
    };
    SimplexOptions o;
    o.max_evals = 3000;
    o.x_tol = 1e-10;
    o.f_tol = 1e-14;
    const auto r = minimize_in_unit_box(f, {0.2, 0.8}, o);
    CHECK(r.value < 1e-6);
    CHECK(r.x[0] == doctest::Approx(0.75).epsilon(1e-3));
}

TEST_CASE("budget and history") {
    int calls = 0;
    const auto f = [&](std::span<const double> x) {
        ++calls;
        return std::sin(13 * x[0]) + std::cos(7 * x[1]) + x[2];
    };
    SimplexOptions o;
    o.max_evals = 37;
    o.x_tol = 0.0;
    o.f_tol = 0.0;
    const auto r = minimize_in_unit_box(f, {0.5, 0.5, 0.5}, o);
    CHECK(calls == r.evaluations);
    CHECK(r.evaluations <= 37);
    CHECK_FALSE(r.converged);
    for (std::size_t i = 1; i < r.best_history.size(); ++i) CHECK(r.best_history[i] <= r.best_history[i - 1]);
    CHECK(r.best_history.back() == r.value);

    const auto again = minimize_in_unit_box(f, {0.5, 0.5, 0.5}, o);
    CHECK(again.x == r.x);
    CHECK(again.best_history == r.best_history);
}

TEST_CASE("zero dimensions and bad input") {
    const auto f = [](std::span<const double>) { return 4.0; };
    const auto r = minimize_in_unit_box(f, {}, SimplexOptions{});
    CHECK(r.value == 4.0);
    CHECK(r.evaluations == 1);
    SimplexOptions o;
    o.max_evals = 0;
    CHECK_THROWS_AS(minimize_in_unit_box(f, {0.5}, o), SpecError);
}

TEST_CASE("halton points") {
    const auto p = halton_point(0, 3, 42);
    CHECK(p.size() == 3);
    CHECK(halton_point(5, 3, 42) == halton_point(5, 3, 42));
    CHECK(halton_point(5, 3, 42) != halton_point(5, 3, 43));
    std::set<double> firsts;
    for (std::uint64_t i = 0; i < 64; ++i) {
        const auto q = halton_point(i, 4, 7);
        for (double v : q) CHECK((v >= 0.0 && v < 1.0));
        firsts.insert(q[0]);
    }
    CHECK(firsts.size() == 64);
    CHECK(halton_point(3, 0, 1).empty());
    CHECK_THROWS_AS(halton_point(0, 17, 1), SpecError);
}

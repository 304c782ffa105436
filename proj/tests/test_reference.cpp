#include <cmath>

#include "doctest.h"
#include "plap/operators.hpp"
#include "plap/reference.hpp"

using namespace plap;

namespace {
SmoothFunction quad_plus_linear() {
    // u = x + x y + y^2: grad(0,0) = (1,0), Q = [[0,1],[1,2]]
    return {[](double x, double y) { return x + x * y + y * y; },
            [](double x, double y) { return std::array<double, 2>{1.0 + y, x + 2.0 * y}; },
            [](double, double) { return std::array<double, 3>{0.0, 1.0, 2.0}; }};
}
} // namespace

TEST_CASE("exact solution registry") {
    CHECK(exact_solution("aronsson").value(1.0, 0.0) == doctest::Approx(1.0));
    CHECK(exact_solution("cone_diff").value(0.5, -0.25) == doctest::Approx(0.25));
    CHECK(exact_solution("affine").value(1.0, 1.0) == doctest::Approx(5.0));
    CHECK_THROWS_AS(exact_solution("nope"), std::invalid_argument);

    Grid2D g(Bounds{-1, 1, -1, 1}, 17);
    GridFunction hs = sample(exact_solution("harmonic_saddle").value, g);
    for (int j = 1; j < g.n - 1; ++j)
        for (int i = 1; i < g.n - 1; ++i)
            CHECK(laplacian_5pt_at(hs, i, j) == doctest::Approx(0.0).epsilon(1e-10));

    auto aff = exact_solution("affine").value;
    InfinityLaplacian il(g, build_stencil(2), aff);
    GridFunction a = sample(aff, g);
    for (int j = 1; j < g.n - 1; ++j)
        for (int i = 1; i < g.n - 1; ++i) CHECK(il.eval(a, i, j) == doctest::Approx(0.0));
}

TEST_CASE("analytic helper operators") {
    SmoothFunction u = quad_plus_linear();
    CHECK(infinity_laplacian_exact(u, 0, 0) == doctest::Approx(0.0));
    CHECK(laplacian_exact(u, 0, 0) == doctest::Approx(2.0));
    CHECK(curvature_factor(u, 0, 0) == doctest::Approx(-1.0));
}

TEST_CASE("circle oracle: affine cancels exactly") {
    SmoothFunction aff{[](double x, double y) { return 3.0 * x + 2.0 * y; },
                       [](double, double) { return std::array<double, 2>{3.0, 2.0}; },
                       [](double, double) { return std::array<double, 3>{0.0, 0.0, 0.0}; }};
    OracleResult r = sphere_consistency_oracle(aff, 0.3, -0.2, 0.1, 10000);
    CHECK(std::abs(r.value) <= 1e-9);
}

TEST_CASE("circle oracle: u = x + x^2 at the origin gives exactly 2") {
    SmoothFunction u{[](double x, double) { return x + x * x; },
                     [](double x, double) { return std::array<double, 2>{1.0 + 2.0 * x, 0.0}; },
                     [](double, double) { return std::array<double, 3>{2.0, 0.0, 0.0}; }};
    OracleResult r = sphere_consistency_oracle(u, 0, 0, 0.1, 10000);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(std::abs(r.correction_estimate) <= 1e-4);
}

TEST_CASE("circle oracle: correction term matches c^2 lap1 u") {
    SmoothFunction u = quad_plus_linear();
    // c = -1, lap1 u = lap - inflap = 2 -> correction -> 2
    double c = curvature_factor(u, 0, 0);
    double target = c * c * (laplacian_exact(u, 0, 0) - infinity_laplacian_exact(u, 0, 0));
    CHECK(target == doctest::Approx(2.0));
    double prev_err = 1e300;
    for (double eps : {0.2, 0.1, 0.05}) {
        OracleResult r = sphere_consistency_oracle(u, 0, 0, eps, 100000);
        double err = std::abs(r.correction_estimate - target);
        CHECK(err < prev_err);
        prev_err = err;
    }
    OracleResult r = sphere_consistency_oracle(u, 0, 0, 0.02, 100000);
    CHECK(r.correction_estimate == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("circle oracle: aronsson value vanishes off the axes") {
    auto aron = [](double x, double y) {
        return std::pow(std::abs(x), 4.0 / 3.0) - std::pow(std::abs(y), 4.0 / 3.0);
    };
    auto sgn = [](double v) { return v < 0 ? -1.0 : 1.0; };
    SmoothFunction u{
        aron,
        [&](double x, double y) {
            return std::array<double, 2>{(4.0 / 3.0) * sgn(x) * std::pow(std::abs(x), 1.0 / 3.0),
                                         -(4.0 / 3.0) * sgn(y) * std::pow(std::abs(y), 1.0 / 3.0)};
        },
        [&](double x, double y) {
            return std::array<double, 3>{(4.0 / 9.0) * std::pow(std::abs(x), -2.0 / 3.0), 0.0,
                                         -(4.0 / 9.0) * std::pow(std::abs(y), -2.0 / 3.0)};
        }};
    OracleResult r = sphere_consistency_oracle(u, 0.5, 0.3, 0.01, 10000);
    CHECK(std::abs(r.value) <= 1e-3);
}

TEST_CASE("circle oracle: input validation") {
    SmoothFunction flat{[](double x, double y) { return x * x + y * y; },
                        [](double x, double y) { return std::array<double, 2>{2 * x, 2 * y}; },
                        [](double, double) { return std::array<double, 3>{2.0, 0.0, 2.0}; }};
    CHECK_THROWS_AS(sphere_consistency_oracle(flat, 0, 0, 0.1, 10000), std::invalid_argument);
    SmoothFunction u = quad_plus_linear();
    CHECK_THROWS_AS(sphere_consistency_oracle(u, 0, 0, 0.1, 100), std::invalid_argument);
}

TEST_CASE("rate fit: exact synthetic sequence") {
    SolveReport rep;
    for (int n = 1; n <= 40; ++n) {
        rep.iter.push_back(n);
        rep.delta_max.push_back(0.0);
        rep.residual_max.push_back(0.0);
        rep.error_max.push_back(std::pow(10.0, -0.5 * (n - 1)));
    }
    RateFit f = fit_rate(rep, 0.25);
    CHECK(!f.floor_case);
    CHECK(f.mu == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(f.residual <= 1e-9);
    // scaling the sequence leaves the slope unchanged
    for (double& e : rep.error_max) e *= 7.0;
    RateFit f2 = fit_rate(rep, 0.25);
    CHECK(f2.mu == doctest::Approx(f.mu).epsilon(1e-12));
}

TEST_CASE("rate fit: falls back to the delta history; reports the floor case") {
    SolveReport rep;
    for (int n = 1; n <= 30; ++n) {
        rep.iter.push_back(n);
        rep.delta_max.push_back(std::pow(10.0, -0.25 * (n - 1)));
        rep.residual_max.push_back(0.0);
        rep.error_max.push_back(std::numeric_limits<double>::quiet_NaN());
    }
    RateFit f = fit_rate(rep, 0.1);
    CHECK(!f.floor_case);
    CHECK(f.mu == doctest::Approx(-0.25).epsilon(1e-9));

    SolveReport flat;
    for (int n = 1; n <= 30; ++n) {
        flat.iter.push_back(n);
        flat.delta_max.push_back(1e-12); // immediately at floor
        flat.residual_max.push_back(0.0);
        flat.error_max.push_back(std::numeric_limits<double>::quiet_NaN());
    }
    RateFit g = fit_rate(flat, 0.5);
    CHECK(g.floor_case);
    CHECK(std::isnan(g.mu));
}

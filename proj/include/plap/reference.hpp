// Exact/reference solutions, the circle-sampling consistency oracle, and
// convergence-rate fitting.
#pragma once

#include <array>
#include <functional>
#include <string>

#include "plap/solvers.hpp"

namespace plap {

struct ExactSolution {
    std::string name;
    std::function<double(double, double)> value;
    double p;            // the p it solves (with g = 0); inf for the cones
    std::string domain;  // where it is a solution
};

// names: harmonic_saddle (x^2 - y^2), aronsson (|x|^{4/3} - |y|^{4/3}),
// cone_diff (|x| - |y|), affine (3x + 2y)
ExactSolution exact_solution(const std::string& name);

// smooth test function with analytic derivatives, for the oracle
struct SmoothFunction {
    std::function<double(double, double)> value;
    std::function<std::array<double, 2>(double, double)> gradient;
    std::function<std::array<double, 3>(double, double)> hessian; // uxx, uxy, uyy
};

double infinity_laplacian_exact(const SmoothFunction& u, double x, double y);
double laplacian_exact(const SmoothFunction& u, double x, double y);
// curvature factor from the expansion: c = -(phat_perp^T Q phat)/|p|
double curvature_factor(const SmoothFunction& u, double x, double y);

struct OracleResult {
    double value;                // min + max over the circle of (u(y)-u(x))/eps^2
    double correction_estimate;  // (value - inflap u(x)) / eps^2
};

// Brute-force circle sampling: m equally spaced points on the radius-eps
// circle around (x,y). value tends to inflap u; the correction tends to
// c^2 * (lap - inflap) u as eps -> 0. Rejects |grad u| < 1e-8 and m < 1e4.
OracleResult sphere_consistency_oracle(const SmoothFunction& u, double x, double y, double eps,
                                       int m);

struct RateFit {
    double alpha;
    double mu;        // fitted exponent: error ~ 10^{mu * N}
    double residual;  // rms of the log10 fit residual
    int points;       // iterations used in the fit
    bool floor_case;  // true when no exponential regime exists (mu is NaN)
};

// Least-squares fit of log10(error_max) against iteration number over the
// exponential regime: iterations 0-1 dropped, everything after the error
// first falls below 10x the final floor dropped.
RateFit fit_rate(const SolveReport& report, double alpha);

} // namespace plap

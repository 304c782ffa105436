#include "plap/reference.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace plap {

ExactSolution exact_solution(const std::string& name) {
    double inf = std::numeric_limits<double>::infinity();
    if (name == "harmonic_saddle")
        return {name, [](double x, double y) { return x * x - y * y; }, 2.0,
                "all of R^2 (also p = inf)"};
    if (name == "aronsson")
        return {name,
                [](double x, double y) {
                    return std::pow(std::abs(x), 4.0 / 3.0) - std::pow(std::abs(y), 4.0 / 3.0);
                },
                inf, "R^2 minus the coordinate axes (viscosity solution everywhere)"};
    if (name == "cone_diff")
        return {name, [](double x, double y) { return std::abs(x) - std::abs(y); }, inf,
                "away from the coordinate axes"};
    if (name == "affine")
        return {name, [](double x, double y) { return 3.0 * x + 2.0 * y; }, inf,
                "all of R^2, every p"};
    throw std::invalid_argument("exact_solution: unknown name '" + name + "'");
}

double infinity_laplacian_exact(const SmoothFunction& u, double x, double y) {
    auto g = u.gradient(x, y);
    auto H = u.hessian(x, y);
    double n2 = g[0] * g[0] + g[1] * g[1];
    ensure(n2 > 0.0, "infinity_laplacian_exact: vanishing gradient");
    return (g[0] * g[0] * H[0] + 2.0 * g[0] * g[1] * H[1] + g[1] * g[1] * H[2]) / n2;
}

double laplacian_exact(const SmoothFunction& u, double x, double y) {
    auto H = u.hessian(x, y);
    return H[0] + H[2];
}

double curvature_factor(const SmoothFunction& u, double x, double y) {
    auto g = u.gradient(x, y);
    auto H = u.hessian(x, y);
    double n = std::hypot(g[0], g[1]);
    ensure(n > 0.0, "curvature_factor: vanishing gradient");
    double px = g[0] / n, py = g[1] / n;
    double qx = -py, qy = px; // phat rotated by +pi/2
    double qQp = qx * (H[0] * px + H[1] * py) + qy * (H[1] * px + H[2] * py);
    return -qQp / n;
}

OracleResult sphere_consistency_oracle(const SmoothFunction& u, double x, double y, double eps,
                                       int m) {
    ensure(m >= 10000, "sphere_consistency_oracle: m >= 1e4 required");
    ensure(eps > 0.0, "sphere_consistency_oracle: eps > 0 required");
    auto g = u.gradient(x, y);
    ensure(std::hypot(g[0], g[1]) >= 1e-8, "sphere_consistency_oracle: gradient too small");
    double uc = u.value(x, y);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int k = 0; k < m; ++k) {
        double th = 2.0 * M_PI * k / m;
        double v = u.value(x + eps * std::cos(th), y + eps * std::sin(th));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    OracleResult r;
    r.value = (lo - uc + hi - uc) / (eps * eps);
    r.correction_estimate = (r.value - infinity_laplacian_exact(u, x, y)) / (eps * eps);
    return r;
}

RateFit fit_rate(const SolveReport& report, double alpha) {
    // series: error history when present, else the successive-change history
    std::vector<std::pair<int, double>> pts; // (iteration, value)
    bool have_err = false;
    for (double e : report.error_max)
        if (std::isfinite(e) && e > 0.0) have_err = true;
    for (size_t k = 0; k < report.iter.size(); ++k) {
        double v = have_err ? report.error_max[k] : report.delta_max[k];
        if (std::isfinite(v) && v > 0.0) pts.emplace_back(report.iter[k], v);
    }
    RateFit fit;
    fit.alpha = alpha;
    fit.mu = std::numeric_limits<double>::quiet_NaN();
    fit.residual = 0.0;
    fit.points = 0;
    fit.floor_case = true;
    if (pts.empty()) return fit;
    double floor = std::numeric_limits<double>::infinity();
    for (auto& [it, v] : pts) floor = std::min(floor, v);
    // exponential regime: drop the first two iterations and the floor tail
    std::vector<double> N, Y;
    for (auto& [it, v] : pts)
        if (it >= 3 && v > 10.0 * floor) {
            N.push_back(it - 1);
            Y.push_back(std::log10(v));
        }
    if (N.size() < 5) return fit;
    double n = (double)N.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < N.size(); ++k) {
        sx += N[k];
        sy += Y[k];
        sxx += N[k] * N[k];
        sxy += N[k] * Y[k];
    }
    double denom = n * sxx - sx * sx;
    fit.mu = (n * sxy - sx * sy) / denom;
    double b = (sy - fit.mu * sx) / n;
    double ss = 0;
    for (size_t k = 0; k < N.size(); ++k) {
        double r = Y[k] - (fit.mu * N[k] + b);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    fit.points = (int)N.size();
    fit.floor_case = false;
    return fit;
}

} // namespace plap

#include "plap/solvers.hpp"

#include <cmath>
#include <limits>

namespace plap {

double cfl_step(const Grid2D& g, PWeights w) {
    // 4 alpha / h^2 + 2 beta / h^2 = 2 / h^2 since beta = 1 - 2 alpha
    (void)w;
    return g.h * g.h / 2.0;
}

GridFunction initial_iterate(const Grid2D& g, const BoundaryData& bd, Init init) {
    switch (init) {
        case Init::Harmonic: return PoissonSolver(g).harmonic_extension(bd);
        case Init::Zero: {
            GridFunction u(g);
            apply_boundary(u, bd);
            return u;
        }
        case Init::BoundaryExtension: return sample(bd, g);
    }
    throw std::invalid_argument("initial_iterate: bad init");
}

namespace {

double nan_or(const GridFunction* ref, const GridFunction& u) {
    return ref ? max_norm_diff(*ref, u, true) : std::numeric_limits<double>::quiet_NaN();
}

void record(SolveReport& r, int it, double delta, double resid, double err) {
    r.iter.push_back(it);
    r.delta_max.push_back(delta);
    r.residual_max.push_back(resid);
    r.error_max.push_back(err);
}

} // namespace

SolveResult explicit_solve(const InfinityLaplacian& il, const BoundaryData& bd, PWeights w,
                           const GridFunction& gsrc, const SolverConfig& cfg,
                           const GridFunction* reference) {
    const Grid2D& g = il.grid();
    double cfl = cfl_step(g, w);
    double rho = cfg.rho_override.value_or(cfl);
    ensure(rho > 0.0 && rho <= cfl * (1.0 + 1e-12),
           "explicit_solve: step exceeds the CFL bound h^2/2");
    GridFunction u = initial_iterate(g, bd, cfg.init);
    apply_boundary(u, bd);
    GridFunction unew = u;
    SolveResult out;
    SolveReport& rep = out.report;
    rep.rho = rho;
    double min_delta = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        double delta = 0.0;
        if (cfg.sweep == Sweep::Jacobi) {
            for (int j = 1; j < g.n - 1; ++j)
                for (int i = 1; i < g.n - 1; ++i) {
                    double v = w.beta != 0.0 ? w.beta * il.eval(u, i, j) : 0.0;
                    if (w.alpha != 0.0) v += w.alpha * laplacian_5pt_at(u, i, j);
                    double step = rho * (v - gsrc.at(i, j));
                    unew.at(i, j) = u.at(i, j) + step;
                    delta = std::max(delta, std::abs(step));
                }
            std::swap(u.values, unew.values);
        } else {
            // red-black Gauss-Seidel ordering: each color's updates are
            // computed from the current field, then applied together
            for (int parity = 0; parity < 2; ++parity) {
                for (int j = 1; j < g.n - 1; ++j)
                    for (int i = 1 + ((j + parity) & 1); i < g.n - 1; i += 2) {
                        double v = w.beta != 0.0 ? w.beta * il.eval(u, i, j) : 0.0;
                        if (w.alpha != 0.0) v += w.alpha * laplacian_5pt_at(u, i, j);
                        double step = rho * (v - gsrc.at(i, j));
                        unew.at(i, j) = u.at(i, j) + step;
                        delta = std::max(delta, std::abs(step));
                    }
                for (int j = 1; j < g.n - 1; ++j)
                    for (int i = 1 + ((j + parity) & 1); i < g.n - 1; i += 2)
                        u.at(i, j) = unew.at(i, j);
            }
        }
        rep.iters = it + 1;
        rep.final_delta = delta;
        min_delta = std::min(min_delta, delta);
        bool done = delta <= cfg.tol;
        bool diverged = delta > cfg.divergence_factor * min_delta;
        if (done || diverged || (it % cfg.record_every == 0) || it + 1 == cfg.max_iters) {
            GridFunction r = residual(u, il, w, gsrc);
            record(rep, it + 1, delta, max_abs(r, true), nan_or(reference, u));
        }
        if (done) {
            rep.converged = true;
            rep.stop = StopReason::Converged;
            break;
        }
        if (diverged) {
            rep.stop = StopReason::Diverged;
            break;
        }
    }
    out.u = std::move(u);
    return out;
}

SolveResult semi_implicit_solve(const InfinityLaplacian& il, const BoundaryData& bd, PWeights w,
                                const GridFunction& gsrc, const SolverConfig& cfg,
                                const GridFunction* reference) {
    const Grid2D& g = il.grid();
    PoissonSolver pois(g);
    GridFunction u = cfg.init == Init::Harmonic ? pois.harmonic_extension(bd)
                                                : initial_iterate(g, bd, cfg.init);
    apply_boundary(u, bd);
    SolveResult out;
    SolveReport& rep = out.report;
    GridFunction rhs(g);
    double min_delta = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        for (int j = 1; j < g.n - 1; ++j)
            for (int i = 1; i < g.n - 1; ++i) {
                double v = w.beta != 0.0
                               ? w.beta * (2.0 * il.eval(u, i, j) - laplacian_5pt_at(u, i, j))
                               : 0.0;
                rhs.at(i, j) = v - 2.0 * gsrc.at(i, j);
            }
        GridFunction un = pois.solve(rhs, bd);
        if (cfg.damping != 1.0) {
            for (int j = 1; j < g.n - 1; ++j)
                for (int i = 1; i < g.n - 1; ++i)
                    un.at(i, j) = u.at(i, j) + cfg.damping * (un.at(i, j) - u.at(i, j));
        }
        double delta = max_norm_diff(un, u);
        u = std::move(un);
        rep.iters = it + 1;
        rep.final_delta = delta;
        min_delta = std::min(min_delta, delta);
        bool done = delta <= cfg.tol;
        bool diverged = delta > cfg.divergence_factor * min_delta;
        if (done || diverged || (it % cfg.record_every == 0) || it + 1 == cfg.max_iters) {
            GridFunction r = residual(u, il, w, gsrc);
            record(rep, it + 1, delta, max_abs(r, true), nan_or(reference, u));
        }
        if (done) {
            rep.converged = true;
            rep.stop = StopReason::Converged;
            break;
        }
        if (diverged) {
            rep.stop = StopReason::Diverged;
            break;
        }
    }
    out.u = std::move(u);
    return out;
}

SolveResult solve(const InfinityLaplacian& il, const BoundaryData& bd, PWeights w,
                  const GridFunction& gsrc, const SolverConfig& cfg,
                  const GridFunction* reference) {
    return cfg.method == Method::Explicit ? explicit_solve(il, bd, w, gsrc, cfg, reference)
                                          : semi_implicit_solve(il, bd, w, gsrc, cfg, reference);
}

SolveResult standard_scheme_solve(const Grid2D& g, const BoundaryData& bd,
                                  const SolverConfig& cfg, const GridFunction* reference) {
    double rho = cfg.rho_override.value_or(g.h * g.h / 2.0);
    GridFunction u = initial_iterate(g, bd, cfg.init);
    apply_boundary(u, bd);
    GridFunction op(g);
    SolveResult out;
    SolveReport& rep = out.report;
    rep.rho = rho;
    for (int it = 0; it < cfg.max_iters; ++it) {
        double resid = 0.0;
        for (int j = 1; j < g.n - 1; ++j)
            for (int i = 1; i < g.n - 1; ++i) {
                op.at(i, j) = standard_fd_infinity_laplacian_at(u, i, j, g.h);
                resid = std::max(resid, std::abs(op.at(i, j)));
            }
        for (int j = 1; j < g.n - 1; ++j)
            for (int i = 1; i < g.n - 1; ++i) u.at(i, j) += rho * op.at(i, j);
        rep.iters = it + 1;
        rep.final_delta = rho * resid;
        bool done = resid <= cfg.tol;
        if (done || (it % cfg.record_every == 0) || it + 1 == cfg.max_iters)
            record(rep, it + 1, rho * resid, resid, nan_or(reference, u));
        if (done) {
            rep.converged = true;
            rep.stop = StopReason::Converged;
            break;
        }
    }
    out.u = std::move(u);
    return out;
}

double fixed_point_check(const GridFunction& u, const InfinityLaplacian& il, PWeights w,
                         const GridFunction& gsrc, double rho) {
    GridFunction r = residual(u, il, w, gsrc);
    return rho * max_abs(r, true);
}

double contraction_rate_model(int n) {
    ensure(n >= 3, "contraction_rate_model: n >= 3 required");
    int m = n - 2;
    double mu_min = 2.0 - 2.0 * std::cos(M_PI / (n - 1));
    double mu_max = 2.0 - 2.0 * std::cos(m * M_PI / (n - 1));
    return (mu_max - mu_min) / (mu_max + mu_min);
}

} // namespace plap

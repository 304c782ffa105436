#include "plap/poisson.hpp"

#include <fftw3.h>

#include <cmath>

#include "plap/operators.hpp"

namespace plap {

struct PoissonSolver::Impl {
    int m;                       // interior nodes per side
    std::vector<double> lam;     // 1D eigenvalues of -d^2/dx^2
    std::vector<double> buf;     // m*m work array, row-major
    fftw_plan plan;              // in-place 2D RODFT00 (self-inverse up to scale)
    double scale;                // 1 / (2(n-1))^2

    Impl(const Grid2D& g) : m(g.n - 2), lam(m), buf((size_t)m * m) {
        for (int k = 1; k <= m; ++k)
            lam[k - 1] = (2.0 - 2.0 * std::cos(k * M_PI / (g.n - 1))) / (g.h * g.h);
        plan = fftw_plan_r2r_2d(m, m, buf.data(), buf.data(), FFTW_RODFT00, FFTW_RODFT00,
                                FFTW_ESTIMATE);
        double s = 2.0 * (g.n - 1);
        scale = 1.0 / (s * s);
    }
    ~Impl() { fftw_destroy_plan(plan); }
};

PoissonSolver::PoissonSolver(const Grid2D& g) : grid_(&g), impl_(std::make_unique<Impl>(g)) {}
PoissonSolver::~PoissonSolver() = default;

GridFunction PoissonSolver::solve(const GridFunction& f, const BoundaryData& bd) const {
    const Grid2D& g = *grid_;
    ensure(f.grid && f.grid->same_as(g), "poisson solve: grid mismatch");
    GridFunction u(g);
    apply_boundary(u, bd);
    Impl& im = *impl_;
    int m = im.m;
    double inv_h2 = 1.0 / (g.h * g.h);
    // rhs with the boundary column/row contributions folded in
    for (int j = 1; j <= m; ++j)
        for (int i = 1; i <= m; ++i) {
            double r = f.at(i, j);
            if (i == 1) r += u.at(0, j) * inv_h2;
            if (i == m) r += u.at(m + 1, j) * inv_h2;
            if (j == 1) r += u.at(i, 0) * inv_h2;
            if (j == m) r += u.at(i, m + 1) * inv_h2;
            im.buf[(size_t)(j - 1) * m + (i - 1)] = r;
        }
    fftw_execute(im.plan);
    for (int b = 0; b < m; ++b)
        for (int a = 0; a < m; ++a) im.buf[(size_t)b * m + a] /= im.lam[a] + im.lam[b];
    fftw_execute(im.plan);
    for (int j = 1; j <= m; ++j)
        for (int i = 1; i <= m; ++i)
            u.at(i, j) = im.buf[(size_t)(j - 1) * m + (i - 1)] * im.scale;
    return u;
}

GridFunction PoissonSolver::harmonic_extension(const BoundaryData& bd) const {
    return solve(GridFunction(*grid_), bd);
}

double poisson_residual(const GridFunction& u, const GridFunction& f) {
    const Grid2D& g = *u.grid;
    double r = 0.0;
    for (int j = 1; j < g.n - 1; ++j)
        for (int i = 1; i < g.n - 1; ++i)
            r = std::max(r, std::abs(laplacian_5pt_at(u, i, j) + f.at(i, j)));
    return r;
}

} // namespace plap

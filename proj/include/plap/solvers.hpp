// Iterative solvers for the Dirichlet p-Laplacian: the explicit
// (parabolic) method with CFL step, and the semi-implicit method that
// solves a Poisson problem per iteration.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plap/operators.hpp"
#include "plap/poisson.hpp"

namespace plap {

enum class Method { Explicit, SemiImplicit };
enum class Init { Harmonic, Zero, BoundaryExtension };
enum class Sweep { Jacobi, RedBlack };
enum class StopReason { Converged, MaxIters, Diverged };

struct SolverConfig {
    Method method = Method::SemiImplicit;
    double tol = 1e-6;                 // stop when max |u^{n+1}-u^n| <= tol
    int max_iters = 10000;
    std::optional<double> rho_override; // explicit step; must be <= cfl_step
    Init init = Init::Harmonic;
    Sweep sweep = Sweep::Jacobi;       // explicit method only
    double damping = 1.0;              // semi-implicit under-relaxation
    double divergence_factor = 10.0;   // abort when delta grows this much over its min
    int record_every = 1;              // history subsampling (>=1)
};

struct SolveReport {
    std::vector<int> iter;             // iteration numbers of recorded rows
    std::vector<double> delta_max;     // max update per recorded iteration
    std::vector<double> residual_max;  // max |p_laplacian(u) - g|
    std::vector<double> error_max;     // vs reference, when one is given (else NaN)
    StopReason stop = StopReason::MaxIters;
    bool converged = false;
    int iters = 0;                     // iterations actually taken
    double final_delta = 0.0;
    double rho = 0.0;                  // explicit step size used (0 for semi-implicit)
};

struct SolveResult {
    GridFunction u;
    SolveReport report;
};

// largest stable explicit step: h^2/2 for every alpha in [0, 1/2]
double cfl_step(const Grid2D& g, PWeights w);

// initial iterate per config (harmonic extension, zero interior, or the
// boundary function sampled over the whole grid)
GridFunction initial_iterate(const Grid2D& g, const BoundaryData& bd, Init init);

// u^{n+1} = u^n + rho (alpha lap_h + beta inflap_h - g) with the boundary
// pinned; Jacobi or red-black Gauss-Seidel ordering
SolveResult explicit_solve(const InfinityLaplacian& il, const BoundaryData& bd, PWeights w,
                           const GridFunction& gsrc, const SolverConfig& cfg,
                           const GridFunction* reference = nullptr);

// solve -lap u^{n+1} = beta (2 inflap_h - lap_h) u^n - 2 g each iteration;
// exact at p = 2 (beta = 0), where it converges in one step
SolveResult semi_implicit_solve(const InfinityLaplacian& il, const BoundaryData& bd, PWeights w,
                                const GridFunction& gsrc, const SolverConfig& cfg,
                                const GridFunction* reference = nullptr);

SolveResult solve(const InfinityLaplacian& il, const BoundaryData& bd, PWeights w,
                  const GridFunction& gsrc, const SolverConfig& cfg,
                  const GridFunction* reference = nullptr);

// Explicit iteration of the non-monotone centered-difference scheme
// (failure demonstration): u += rho * standard_fd_infinity_laplacian(u)
// until max interior |operator value| <= cfg.tol. cfg.sweep is ignored.
SolveResult standard_scheme_solve(const Grid2D& g, const BoundaryData& bd,
                                  const SolverConfig& cfg,
                                  const GridFunction* reference = nullptr);

// size of one explicit update from u: max interior |rho (p_laplacian(u) - g)|;
// small iff u is (near) a fixed point of the scheme
double fixed_point_check(const GridFunction& u, const InfinityLaplacian& il, PWeights w,
                         const GridFunction& gsrc, double rho);

// worst-case linear contraction factor max_{i,j} |mu_i - mu_j|/(mu_i + mu_j)
// over the 1D Dirichlet second-difference eigenvalues on an n-node grid
double contraction_rate_model(int n);

} // namespace plap

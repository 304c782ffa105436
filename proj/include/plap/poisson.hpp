// Direct Dirichlet Poisson solver on the square via the type-I discrete
// sine transform (FFTW RODFT00), which diagonalizes the 5-point Laplacian.
#pragma once

#include <memory>

#include "plap/grid.hpp"

namespace plap {

// Solves -lap_h u = f on interior nodes with u = bd on the boundary.
// Plans and eigenvalues are prepared once per grid; solve() is then a
// deterministic O(n^2 log n) direct solve (no iteration, no tolerance).
class PoissonSolver {
  public:
    explicit PoissonSolver(const Grid2D& g);
    ~PoissonSolver();
    PoissonSolver(const PoissonSolver&) = delete;
    PoissonSolver& operator=(const PoissonSolver&) = delete;

    // f holds the right-hand side at interior nodes (boundary entries ignored)
    GridFunction solve(const GridFunction& f, const BoundaryData& bd) const;

    // f = 0: the discrete harmonic extension of the boundary data
    GridFunction harmonic_extension(const BoundaryData& bd) const;

    const Grid2D& grid() const { return *grid_; }

  private:
    struct Impl;
    const Grid2D* grid_;
    std::unique_ptr<Impl> impl_;
};

// max interior |lap_h u + f| (direct check that a solve satisfied the system)
double poisson_residual(const GridFunction& u, const GridFunction& f);

} // namespace plap

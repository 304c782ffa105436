// Monotone wide-stencil infinity Laplacian, 5-point Laplacian, their
// convex combination for the p-Laplacian, and the non-monotone standard
// centered-difference infinity Laplacian.
#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "plap/grid.hpp"
#include "plap/stencil.hpp"

namespace plap {

// alpha = 1/p, beta = (p-2)/p; p = inf -> (0, 1)
struct PWeights {
    double alpha, beta;
    static PWeights from_p(double p) {
        ensure(p >= 2.0, "p must be in [2, inf]");
        if (std::isinf(p)) return {0.0, 1.0};
        return {1.0 / p, (p - 2.0) / p};
    }
    static PWeights from_alpha(double a) {
        ensure(a >= 0.0 && a <= 0.5, "alpha must be in [0, 1/2]");
        return {a, 1.0 - 2.0 * a};
    }
};

// Interior-node evaluation of the wide-stencil scheme
//   max_i (u(x+v_i)-u(x))/l_i^2 + min_i (u(x+v_i)-u(x))/l_i^2
// with truncated arms read from the Dirichlet data. Ties break to the
// lowest direction index. Precomputes arm tables once per (grid, stencil,
// data); evaluations are pure and cheap.
class InfinityLaplacian {
  public:
    InfinityLaplacian(const Grid2D& g, const Stencil& s, const BoundaryData& bd);

    // value at one interior node; optionally reports argmax/argmin arms
    double eval(const GridFunction& u, int i, int j, int* vplus = nullptr,
                int* vminus = nullptr) const;

    // whole-field application; boundary rows of the result are zero
    GridFunction apply(const GridFunction& u) const;

    const Stencil& stencil() const { return stencil_; }
    const Grid2D& grid() const { return *grid_; }

  private:
    const Grid2D* grid_;
    Stencil stencil_;
    int margin_;                    // widest offset component
    std::vector<int> offsets_;      // flattened index offsets, per direction
    std::vector<double> inv_l2_;    // 1/l^2 for untruncated arms

    struct TruncArm {
        bool truncated;
        int offset;        // valid when untruncated
        double bval;       // Dirichlet value at the boundary intersection
        double inv_l2;
    };
    // per near-edge interior node (flattened idx), one entry per direction
    std::vector<std::pair<int, std::vector<TruncArm>>> edge_nodes_;
    std::vector<int> edge_lookup_;  // idx -> position in edge_nodes_, or -1

    double eval_edge(const GridFunction& u, int pos, int center_idx, int* vplus,
                     int* vminus) const;
};

// 4(ubar - u)/h^2 at interior nodes; boundary rows zero
GridFunction laplacian_5pt(const GridFunction& u);
double laplacian_5pt_at(const GridFunction& u, int i, int j);

// alpha*laplacian_5pt + beta*infinity_laplacian
GridFunction p_laplacian(const GridFunction& u, const InfinityLaplacian& il, PWeights w);

// centered differences with the symmetric cross scheme for u_xy and the
// max(h_reg^2, |grad u|^2) regularization; h_reg defaults to h
GridFunction standard_fd_infinity_laplacian(const GridFunction& u,
                                            std::optional<double> h_reg = std::nullopt);
double standard_fd_infinity_laplacian_at(const GridFunction& u, int i, int j, double h_reg);

// p_laplacian(u) - g at interior nodes
GridFunction residual(const GridFunction& u, const InfinityLaplacian& il, PWeights w,
                      const GridFunction& g);

} // namespace plap

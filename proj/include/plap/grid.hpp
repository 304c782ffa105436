// Uniform 2D Cartesian grid, nodal scalar fields, Dirichlet boundary data.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plap {

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

struct Bounds {
    double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
};

// Square-celled grid with n nodes per side (boundary included).
// Node (i,j) sits at (xmin + i*h, ymin + j*h); i is the x-index.
struct Grid2D {
    double xmin, xmax, ymin, ymax;
    int n;
    double h;

    Grid2D(Bounds b, int n_) : xmin(b.xmin), xmax(b.xmax), ymin(b.ymin), ymax(b.ymax), n(n_) {
        ensure(n >= 3, "Grid2D: n >= 3 required");
        ensure(xmax > xmin && ymax > ymin, "Grid2D: empty bounds");
        h = (xmax - xmin) / (n - 1);
        double hy = (ymax - ymin) / (n - 1);
        ensure(std::abs(h - hy) <= 1e-12 * std::abs(h), "Grid2D: cells must be square");
    }

    double x(int i) const { return xmin + i * h; }
    double y(int j) const { return ymin + j * h; }
    int size() const { return n * n; }
    // row-major with rows indexed by j (the y-index)
    int idx(int i, int j) const { return j * n + i; }
    bool interior(int i, int j) const { return i > 0 && i < n - 1 && j > 0 && j < n - 1; }
    bool boundary(int i, int j) const { return !interior(i, j); }
    int interior_count() const { return (n - 2) * (n - 2); }
    // nearest node to a point
    int nearest_i(double xv) const { return (int)std::lround((xv - xmin) / h); }
    int nearest_j(double yv) const { return (int)std::lround((yv - ymin) / h); }

    bool same_as(const Grid2D& o) const {
        return n == o.n && xmin == o.xmin && xmax == o.xmax && ymin == o.ymin && ymax == o.ymax;
    }
};

// Dirichlet data, evaluable anywhere on the closed domain (truncated
// stencil arms hit the boundary between nodes).
using BoundaryData = std::function<double(double, double)>;

struct GridFunction {
    const Grid2D* grid = nullptr;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(const Grid2D& g, double fill = 0.0) : grid(&g), values(g.size(), fill) {}

    double& at(int i, int j) { return values[grid->idx(i, j)]; }
    double at(int i, int j) const { return values[grid->idx(i, j)]; }

    bool compatible(const GridFunction& o) const {
        return grid && o.grid && grid->same_as(*o.grid);
    }
};

// values[i,j] = f(node(i,j)); rejects non-finite samples
GridFunction sample(const std::function<double(double, double)>& f, const Grid2D& g);

// overwrite boundary nodes from the Dirichlet data
void apply_boundary(GridFunction& u, const BoundaryData& bd);

// max over nodes of |a-b|
double max_norm_diff(const GridFunction& a, const GridFunction& b, bool interior_only = false);

double max_abs(const GridFunction& a, bool interior_only = false);

} // namespace plap

#include "plap/grid.hpp"

namespace plap {

GridFunction sample(const std::function<double(double, double)>& f, const Grid2D& g) {
    GridFunction u(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            double v = f(g.x(i), g.y(j));
            if (!std::isfinite(v))
                throw std::domain_error("sample: non-finite value at node (" + std::to_string(i) +
                                        "," + std::to_string(j) + ")");
            u.at(i, j) = v;
        }
    return u;
}

void apply_boundary(GridFunction& u, const BoundaryData& bd) {
    const Grid2D& g = *u.grid;
    for (int i = 0; i < g.n; ++i) {
        u.at(i, 0) = bd(g.x(i), g.ymin);
        u.at(i, g.n - 1) = bd(g.x(i), g.ymax);
    }
    for (int j = 0; j < g.n; ++j) {
        u.at(0, j) = bd(g.xmin, g.y(j));
        u.at(g.n - 1, j) = bd(g.xmax, g.y(j));
    }
}

double max_norm_diff(const GridFunction& a, const GridFunction& b, bool interior_only) {
    ensure(a.compatible(b), "max_norm_diff: incompatible grids");
    const Grid2D& g = *a.grid;
    int lo = interior_only ? 1 : 0;
    int hi = interior_only ? g.n - 1 : g.n;
    double m = 0.0;
    for (int j = lo; j < hi; ++j)
        for (int i = lo; i < hi; ++i) m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
    return m;
}

double max_abs(const GridFunction& a, bool interior_only) {
    const Grid2D& g = *a.grid;
    int lo = interior_only ? 1 : 0;
    int hi = interior_only ? g.n - 1 : g.n;
    double m = 0.0;
    for (int j = lo; j < hi; ++j)
        for (int i = lo; i < hi; ++i) m = std::max(m, std::abs(a.at(i, j)));
    return m;
}

} // namespace plap

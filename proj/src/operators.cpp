#include "plap/operators.hpp"

#include <algorithm>

namespace plap {

InfinityLaplacian::InfinityLaplacian(const Grid2D& g, const Stencil& s, const BoundaryData& bd)
    : grid_(&g), stencil_(s) {
    margin_ = 0;
    for (const auto& d : s.directions)
        margin_ = std::max({margin_, std::abs(d.dx), std::abs(d.dy)});
    for (const auto& d : s.directions) {
        offsets_.push_back(d.dy * g.n + d.dx);
        double l = d.len() * g.h;
        inv_l2_.push_back(1.0 / (l * l));
    }
    // arm tables for interior nodes within margin of the edge
    edge_lookup_.assign(g.size(), -1);
    for (int j = 1; j < g.n - 1; ++j)
        for (int i = 1; i < g.n - 1; ++i) {
            if (i >= margin_ && i < g.n - margin_ && j >= margin_ && j < g.n - margin_) continue;
            NodeArms na = arms_at(g, s, i, j);
            std::vector<TruncArm> tarms(na.arms.size());
            for (size_t k = 0; k < na.arms.size(); ++k) {
                const Arm& a = na.arms[k];
                TruncArm& t = tarms[k];
                t.inv_l2 = 1.0 / (a.length * a.length);
                if (a.end == ArmEnd::GridNode) {
                    t.truncated = false;
                    t.offset = offsets_[k];
                    t.bval = 0.0;
                } else {
                    t.truncated = true;
                    t.offset = 0;
                    t.bval = bd(a.ex, a.ey);
                }
            }
            edge_lookup_[g.idx(i, j)] = (int)edge_nodes_.size();
            edge_nodes_.emplace_back(g.idx(i, j), std::move(tarms));
        }
}

double InfinityLaplacian::eval(const GridFunction& u, int i, int j, int* vplus,
                               int* vminus) const {
    const Grid2D& g = *grid_;
    int c = g.idx(i, j);
    int pos = edge_lookup_[c];
    if (pos >= 0) return eval_edge(u, pos, c, vplus, vminus);
    const double* v = u.values.data();
    double uc = v[c];
    double best_max = -std::numeric_limits<double>::infinity();
    double best_min = std::numeric_limits<double>::infinity();
    int kmax = 0, kmin = 0;
    for (size_t k = 0; k < offsets_.size(); ++k) {
        double d = (v[c + offsets_[k]] - uc) * inv_l2_[k];
        if (d > best_max) { best_max = d; kmax = (int)k; }
        if (d < best_min) { best_min = d; kmin = (int)k; }
    }
    if (vplus) *vplus = kmax;
    if (vminus) *vminus = kmin;
    return best_max + best_min;
}

double InfinityLaplacian::eval_edge(const GridFunction& u, int pos, int c, int* vplus,
                                    int* vminus) const {
    const auto& tarms = edge_nodes_[pos].second;
    const double* v = u.values.data();
    double uc = v[c];
    double best_max = -std::numeric_limits<double>::infinity();
    double best_min = std::numeric_limits<double>::infinity();
    int kmax = 0, kmin = 0;
    for (size_t k = 0; k < tarms.size(); ++k) {
        const TruncArm& t = tarms[k];
        double ue = t.truncated ? t.bval : v[c + t.offset];
        double d = (ue - uc) * t.inv_l2;
        if (d > best_max) { best_max = d; kmax = (int)k; }
        if (d < best_min) { best_min = d; kmin = (int)k; }
    }
    if (vplus) *vplus = kmax;
    if (vminus) *vminus = kmin;
    return best_max + best_min;
}

GridFunction InfinityLaplacian::apply(const GridFunction& u) const {
    ensure(u.grid && u.grid->same_as(*grid_), "infinity_laplacian: grid mismatch");
    GridFunction out(*grid_);
    for (int j = 1; j < grid_->n - 1; ++j)
        for (int i = 1; i < grid_->n - 1; ++i) out.at(i, j) = eval(u, i, j);
    return out;
}

double laplacian_5pt_at(const GridFunction& u, int i, int j) {
    const Grid2D& g = *u.grid;
    double ubar = 0.25 * (u.at(i + 1, j) + u.at(i - 1, j) + u.at(i, j + 1) + u.at(i, j - 1));
    return 4.0 * (ubar - u.at(i, j)) / (g.h * g.h);
}

GridFunction laplacian_5pt(const GridFunction& u) {
    const Grid2D& g = *u.grid;
    GridFunction out(g);
    double inv_h2 = 1.0 / (g.h * g.h);
    for (int j = 1; j < g.n - 1; ++j)
        for (int i = 1; i < g.n - 1; ++i) {
            int c = g.idx(i, j);
            const double* v = u.values.data();
            out.values[c] =
                (v[c + 1] + v[c - 1] + v[c + g.n] + v[c - g.n] - 4.0 * v[c]) * inv_h2;
        }
    return out;
}

GridFunction p_laplacian(const GridFunction& u, const InfinityLaplacian& il, PWeights w) {
    const Grid2D& g = *u.grid;
    GridFunction out(g);
    for (int j = 1; j < g.n - 1; ++j)
        for (int i = 1; i < g.n - 1; ++i) {
            double v = 0.0;
            if (w.alpha != 0.0) v += w.alpha * laplacian_5pt_at(u, i, j);
            if (w.beta != 0.0) v += w.beta * il.eval(u, i, j);
            out.at(i, j) = v;
        }
    return out;
}

double standard_fd_infinity_laplacian_at(const GridFunction& u, int i, int j, double h_reg) {
    const Grid2D& g = *u.grid;
    double h = g.h;
    double ux = (u.at(i + 1, j) - u.at(i - 1, j)) / (2 * h);
    double uy = (u.at(i, j + 1) - u.at(i, j - 1)) / (2 * h);
    double uxx = (u.at(i + 1, j) - 2 * u.at(i, j) + u.at(i - 1, j)) / (h * h);
    double uyy = (u.at(i, j + 1) - 2 * u.at(i, j) + u.at(i, j - 1)) / (h * h);
    double uxy = (u.at(i + 1, j + 1) + u.at(i - 1, j - 1) - u.at(i - 1, j + 1) -
                  u.at(i + 1, j - 1)) /
                 (4 * h * h);
    double num = ux * ux * uxx + 2 * ux * uy * uxy + uy * uy * uyy;
    double den = std::max(h_reg * h_reg, ux * ux + uy * uy);
    return num / den;
}

GridFunction standard_fd_infinity_laplacian(const GridFunction& u, std::optional<double> h_reg) {
    const Grid2D& g = *u.grid;
    double hr = h_reg.value_or(g.h);
    GridFunction out(g);
    for (int j = 1; j < g.n - 1; ++j)
        for (int i = 1; i < g.n - 1; ++i)
            out.at(i, j) = standard_fd_infinity_laplacian_at(u, i, j, hr);
    return out;
}

GridFunction residual(const GridFunction& u, const InfinityLaplacian& il, PWeights w,
                      const GridFunction& g) {
    GridFunction r = p_laplacian(u, il, w);
    const Grid2D& gr = *u.grid;
    for (int j = 1; j < gr.n - 1; ++j)
        for (int i = 1; i < gr.n - 1; ++i) r.at(i, j) -= g.at(i, j);
    return r;
}

} // namespace plap

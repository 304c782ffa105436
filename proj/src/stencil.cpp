#include "plap/stencil.hpp"

#include <algorithm>
#include <cmath>

namespace plap {

Stencil build_stencil(int level) {
    ensure(level >= 1 && level <= 3, "build_stencil: level must be 1, 2 or 3");
    std::vector<Direction> dirs = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    if (level >= 2) {
        dirs.push_back({1, 1});
        dirs.push_back({-1, -1});
        dirs.push_back({1, -1});
        dirs.push_back({-1, 1});
    }
    if (level >= 3) {
        for (auto [a, b] : std::array<std::array<int, 2>, 8>{
                 {{1, 2}, {-1, -2}, {1, -2}, {-1, 2}, {2, 1}, {-2, -1}, {2, -1}, {-2, 1}}})
            dirs.push_back({a, b});
    }
    Stencil s;
    s.level = level;
    s.directions = std::move(dirs);
    s.h_max_factor = 0.0;
    for (const auto& d : s.directions) s.h_max_factor = std::max(s.h_max_factor, d.len());
    s.dtheta = directional_resolution(s);
    return s;
}

double directional_resolution(const Stencil& s) {
    ensure(!s.directions.empty(), "directional_resolution: empty stencil");
    std::vector<double> ang;
    ang.reserve(s.directions.size());
    for (const auto& d : s.directions) ang.push_back(std::atan2((double)d.dy, (double)d.dx));
    std::sort(ang.begin(), ang.end());
    double gap = 2.0 * M_PI + ang.front() - ang.back();
    for (size_t k = 1; k < ang.size(); ++k) gap = std::max(gap, ang[k] - ang[k - 1]);
    // worst unit vector sits mid-gap; chord distance = 2 sin(angle/2)
    return 2.0 * std::sin(gap / 4.0);
}

double directional_resolution_sweep(const Stencil& s, int m) {
    double worst = 0.0;
    for (int k = 0; k < m; ++k) {
        double th = 2.0 * M_PI * k / m;
        double vx = std::cos(th), vy = std::sin(th);
        double best = 4.0;
        for (const auto& d : s.directions) {
            double l = d.len();
            double cx = vx - d.dx / l, cy = vy - d.dy / l;
            best = std::min(best, std::sqrt(cx * cx + cy * cy));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

NodeArms arms_at(const Grid2D& g, const Stencil& s, int i, int j) {
    ensure(g.interior(i, j), "arms_at: node must be interior");
    NodeArms out;
    out.arms.reserve(s.directions.size());
    for (int k = 0; k < (int)s.directions.size(); ++k) {
        const Direction& d = s.directions[k];
        int ti = i + d.dx, tj = j + d.dy;
        Arm a;
        a.dir_index = k;
        if (ti >= 0 && ti < g.n && tj >= 0 && tj < g.n) {
            a.end = ArmEnd::GridNode;
            a.ei = ti;
            a.ej = tj;
            a.ex = g.x(ti);
            a.ey = g.y(tj);
            a.length = d.len() * g.h;
        } else {
            // largest t in (0,1] keeping node + t*v*h inside the closed domain
            double t = 1.0;
            if (ti < 0) t = std::min(t, (double)i / -d.dx);
            if (ti > g.n - 1) t = std::min(t, (double)(g.n - 1 - i) / d.dx);
            if (tj < 0) t = std::min(t, (double)j / -d.dy);
            if (tj > g.n - 1) t = std::min(t, (double)(g.n - 1 - j) / d.dy);
            a.end = ArmEnd::BoundaryPoint;
            a.ei = a.ej = -1;
            a.ex = g.x(i) + t * d.dx * g.h;
            a.ey = g.y(j) + t * d.dy * g.h;
            a.length = t * d.len() * g.h;
        }
        out.arms.push_back(a);
    }
    return out;
}

} // namespace plap

// Symmetric wide stencils (5/9/17 point) with spatial and directional
// resolution, and boundary-truncated arm sets.
#pragma once

#include <array>
#include <vector>

#include "plap/grid.hpp"

namespace plap {

struct Direction {
    int dx, dy;
    double len() const { return std::sqrt(double(dx * dx + dy * dy)); }
};

struct Stencil {
    int level;                        // 1 -> 5pt, 2 -> 9pt, 3 -> 17pt
    std::vector<Direction> directions;
    double h_max_factor;              // max_i |v_i| in index units
    double dtheta;                    // max chord distance to nearest direction
};

// level 1: axes; level 2: adds diagonals; level 3: adds knight moves
Stencil build_stencil(int level);

// exact sector arithmetic: 2 sin(gap/4) over the largest angular gap
double directional_resolution(const Stencil& s);

// brute-force check of dtheta: max over m sweep directions of the chord
// distance to the nearest stencil direction (test oracle)
double directional_resolution_sweep(const Stencil& s, int m);

enum class ArmEnd { GridNode, BoundaryPoint };

struct Arm {
    int dir_index;
    ArmEnd end;
    int ei, ej;        // endpoint node indices (GridNode)
    double ex, ey;     // endpoint coordinates (BoundaryPoint)
    double length;     // actual arm length, <= |v|*h
};

struct NodeArms {
    std::vector<Arm> arms; // one per stencil direction, in direction order
};

// Arms at an interior node. An arm whose endpoint node leaves the closed
// domain is truncated to the boundary intersection; the Dirichlet data is
// then evaluated at (ex,ey).
NodeArms arms_at(const Grid2D& g, const Stencil& s, int i, int j);

} // namespace plap

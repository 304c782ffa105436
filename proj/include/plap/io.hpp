// CSV serialization for grid functions and solve reports.
//
// Grid function layout (version header, then one row per y-index, the
// x-sweep comma-separated):
//   # plap-csv v1
//   # n=<n> xmin=<xmin> ymin=<ymin> h=<h>
//   u(0,0),u(1,0),...,u(n-1,0)
//   ...
// Solve report layout:
//   # plap-csv v1
//   iter,delta_max,residual_max,error_max
//   1,<delta>,<residual>,<error or nan>
#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "plap/solvers.hpp"

namespace plap {

void write_grid_function(std::ostream& os, const GridFunction& u);
void write_grid_function(const std::string& path, const GridFunction& u);

// a grid function together with the grid it owns
struct LoadedField {
    std::shared_ptr<Grid2D> grid;
    GridFunction u;
};

LoadedField read_grid_function(std::istream& is);
LoadedField read_grid_function(const std::string& path);

void write_solve_report(std::ostream& os, const SolveReport& r);
void write_solve_report(const std::string& path, const SolveReport& r);

} // namespace plap

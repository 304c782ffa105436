#include "plap/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace plap {

namespace {

constexpr const char* kVersionLine = "# plap-csv v1";

std::string fmt(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    ensure(ec == std::errc(), "csv: number formatting failed");
    return std::string(buf, p);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("csv: cannot open '" + path + "' for reading");
    return is;
}

} // namespace

void write_grid_function(std::ostream& os, const GridFunction& u) {
    const Grid2D& g = *u.grid;
    os << kVersionLine << "\n";
    os << "# n=" << g.n << " xmin=" << fmt(g.xmin) << " ymin=" << fmt(g.ymin)
       << " h=" << fmt(g.h) << "\n";
    for (int j = 0; j < g.n; ++j) {
        for (int i = 0; i < g.n; ++i) {
            if (i) os << ',';
            os << fmt(u.at(i, j));
        }
        os << "\n";
    }
}

void write_grid_function(const std::string& path, const GridFunction& u) {
    auto os = open_out(path);
    write_grid_function(os, u);
}

LoadedField read_grid_function(std::istream& is) {
    std::string line;
    ensure(std::getline(is, line) && line == kVersionLine, "csv: bad or missing version line");
    ensure(std::getline(is, line) && line.rfind("# n=", 0) == 0, "csv: bad grid header");
    int n = 0;
    double xmin = 0, ymin = 0, h = 0;
    {
        std::istringstream hs(line.substr(1));
        std::string tok;
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "n") n = std::stoi(val);
            else if (key == "xmin") xmin = std::stod(val);
            else if (key == "ymin") ymin = std::stod(val);
            else if (key == "h") h = std::stod(val);
        }
    }
    ensure(n >= 3 && h > 0, "csv: invalid grid header values");
    Bounds b{xmin, xmin + (n - 1) * h, ymin, ymin + (n - 1) * h};
    LoadedField out;
    out.grid = std::make_shared<Grid2D>(b, n);
    out.u = GridFunction(*out.grid);
    for (int j = 0; j < n; ++j) {
        ensure((bool)std::getline(is, line), "csv: truncated data rows");
        std::istringstream rs(line);
        std::string cell;
        for (int i = 0; i < n; ++i) {
            ensure((bool)std::getline(rs, cell, ','), "csv: short row");
            out.u.at(i, j) = std::stod(cell);
        }
    }
    return out;
}

LoadedField read_grid_function(const std::string& path) {
    auto is = open_in(path);
    return read_grid_function(is);
}

void write_solve_report(std::ostream& os, const SolveReport& r) {
    os << kVersionLine << "\n";
    os << "iter,delta_max,residual_max,error_max\n";
    for (size_t k = 0; k < r.iter.size(); ++k)
        os << r.iter[k] << ',' << fmt(r.delta_max[k]) << ',' << fmt(r.residual_max[k]) << ','
           << fmt(r.error_max[k]) << "\n";
}

void write_solve_report(const std::string& path, const SolveReport& r) {
    auto os = open_out(path);
    write_solve_report(os, r);
}

} // namespace plap

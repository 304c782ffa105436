// Experiment runner: solves the p-Laplacian Dirichlet problem on the
// square and writes solution fields / iteration reports as CSV.
//
// Exit codes: 0 success/converged, 1 configuration error, 2 iteration
// limit reached, 3 divergence guard tripped, 4 I/O failure.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "plap/io.hpp"
#include "plap/reference.hpp"

using namespace plap;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kConfigErr = 1, kMaxIters = 2, kDiverged = 3, kIoErr = 4;

double parse_p(const std::string& s) {
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

// boundary data by name; "cone_plus_linear:c=<v>" adds a linear ramp to the cone
BoundaryData make_boundary(const std::string& spec) {
    if (spec.rfind("cone_plus_linear", 0) == 0) {
        double c = 0.0;
        auto pos = spec.find(":c=");
        if (pos != std::string::npos) c = std::stod(spec.substr(pos + 3));
        else if (spec != "cone_plus_linear")
            throw std::invalid_argument("boundary: bad spec '" + spec + "'");
        return [c](double x, double y) {
            return std::abs(x) - std::abs(y) + c * (3.0 * x + 2.0 * y) / std::sqrt(14.0);
        };
    }
    if (spec == "aronsson_smooth")
        return [](double x, double y) {
            return std::pow(x, 4.0 / 3.0) - std::pow(y, 4.0 / 3.0);
        };
    return exact_solution(spec).value; // throws on unknown names
}

int stencil_level_from_points(int pts) {
    if (pts == 5) return 1;
    if (pts == 9) return 2;
    if (pts == 17) return 3;
    throw std::invalid_argument("stencil: must be 5, 9 or 17 points");
}

fs::path output_dir(const std::string& flag_value) {
    const char* env = std::getenv("PLAP_OUTPUT_DIR");
    fs::path dir = (env && *env) ? fs::path(env) : fs::path(flag_value);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
    return dir;
}

int status_of(const SolveReport& r) {
    if (r.stop == StopReason::Diverged) return kDiverged;
    if (!r.converged) return kMaxIters;
    return kOk;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

// shared problem/solver flags
struct CommonOpts {
    int n = 129;
    int stencil_pts = 9;
    std::string p = "inf";
    double alpha = -1.0; // if >= 0, overrides --p
    std::string boundary = "aronsson";
    std::string exact;   // error-reference field name (optional)
    double gconst = 0.0;
    std::string method = "semi-implicit";
    double tol = 1e-6;
    int max_iters = 10000;
    double rho = -1.0;
    std::string init = "harmonic";
    std::string order = "jacobi";
    double damping = 1.0;
    int record_every = 1;
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    std::string out_dir = ".";
    std::string prefix = "run";
    std::string config_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", n, "grid nodes per side");
        cmd->add_option("--stencil", stencil_pts, "stencil points: 5, 9 or 17");
        cmd->add_option("--p", p, "p in [2, inf]; 'inf' for the infinity laplacian");
        cmd->add_option("--alpha", alpha, "weight 1/p in [0, 1/2]; overrides --p when set");
        cmd->add_option("--boundary", boundary,
                        "boundary data: harmonic_saddle, aronsson, aronsson_smooth, cone_diff, "
                        "affine, cone_plus_linear:c=<v>");
        cmd->add_option("--exact", exact, "named field for the error column of the report");
        cmd->add_option("--g", gconst, "constant right-hand side");
        cmd->add_option("--method", method, "explicit, semi-implicit or standard");
        cmd->add_option("--tol", tol, "stop when the max-norm update is below this");
        cmd->add_option("--max-iters", max_iters, "iteration cap");
        cmd->add_option("--rho", rho, "explicit step size (default: the CFL bound h^2/2)");
        cmd->add_option("--init", init, "harmonic, zero or boundary-extension");
        cmd->add_option("--order", order, "explicit update order: jacobi or red-black");
        cmd->add_option("--damping", damping, "semi-implicit under-relaxation factor");
        cmd->add_option("--record-every", record_every, "report row subsampling");
        cmd->add_option("--xmin", xmin);
        cmd->add_option("--xmax", xmax);
        cmd->add_option("--ymin", ymin);
        cmd->add_option("--ymax", ymax);
        cmd->add_option("--output-dir", out_dir,
                        "artifact directory (env PLAP_OUTPUT_DIR overrides)");
        cmd->add_option("--prefix", prefix, "output file name prefix");
        cmd->add_option("--config", config_path, "key=value config file (file wins over flags)");
    }

    SolverConfig solver_config() const {
        SolverConfig cfg;
        cfg.method = method == "explicit" ? Method::Explicit : Method::SemiImplicit;
        cfg.tol = tol;
        cfg.max_iters = max_iters;
        if (rho > 0) cfg.rho_override = rho;
        if (init == "harmonic") cfg.init = Init::Harmonic;
        else if (init == "zero") cfg.init = Init::Zero;
        else if (init == "boundary-extension") cfg.init = Init::BoundaryExtension;
        else throw std::invalid_argument("init: unknown value '" + init + "'");
        if (order == "jacobi") cfg.sweep = Sweep::Jacobi;
        else if (order == "red-black") cfg.sweep = Sweep::RedBlack;
        else throw std::invalid_argument("order: unknown value '" + order + "'");
        cfg.damping = damping;
        cfg.record_every = record_every;
        return cfg;
    }

    PWeights weights() const {
        return alpha >= 0.0 ? PWeights::from_alpha(alpha) : PWeights::from_p(parse_p(p));
    }
};

struct RunOutput {
    SolveResult result;
    int status;
};

RunOutput run_one(const CommonOpts& o, int n, PWeights w, const std::string& bname,
                  const Grid2D*& grid_out, std::vector<std::unique_ptr<Grid2D>>& grids) {
    grids.push_back(std::make_unique<Grid2D>(Bounds{o.xmin, o.xmax, o.ymin, o.ymax}, n));
    const Grid2D& g = *grids.back();
    grid_out = &g;
    BoundaryData bd = make_boundary(bname);
    InfinityLaplacian il(g, build_stencil(stencil_level_from_points(o.stencil_pts)), bd);
    GridFunction gsrc(g, 0.0);
    if (o.gconst != 0.0)
        for (int j = 1; j < g.n - 1; ++j)
            for (int i = 1; i < g.n - 1; ++i) gsrc.at(i, j) = o.gconst;
    GridFunction exact;
    const GridFunction* ref = nullptr;
    if (!o.exact.empty()) {
        exact = sample(make_boundary(o.exact), g);
        ref = &exact;
    }
    SolverConfig cfg = o.solver_config();
    RunOutput out{{}, 0};
    if (o.method == "standard") {
        out.result = standard_scheme_solve(g, bd, cfg, ref);
    } else {
        out.result = solve(il, bd, w, gsrc, cfg, ref);
    }
    out.status = status_of(out.result.report);
    return out;
}

int cmd_solve(const CommonOpts& o) {
    fs::path dir = output_dir(o.out_dir);
    std::vector<std::unique_ptr<Grid2D>> grids;
    const Grid2D* g = nullptr;
    RunOutput r = run_one(o, o.n, o.weights(), o.boundary, g, grids);
    write_grid_function((dir / (o.prefix + "_solution.csv")).string(), r.result.u);
    write_solve_report((dir / (o.prefix + "_report.csv")).string(), r.result.report);
    std::cout << o.prefix << ": " << r.result.report.iters
              << " iters, final update " << r.result.report.final_delta
              << (r.result.report.converged ? " (converged)" : " (not converged)") << "\n";
    return r.status;
}

int cmd_sweep(const CommonOpts& o, const std::string& n_list, const std::string& method_list,
              const std::string& alpha_list, const std::string& boundary_list, bool do_fit) {
    fs::path dir = output_dir(o.out_dir);
    std::vector<int> ns;
    for (const auto& t : split_list(n_list)) ns.push_back(std::stoi(t));
    if (ns.empty()) ns.push_back(o.n);
    std::vector<std::string> methods = method_list == "both"
                                           ? std::vector<std::string>{"explicit", "semi-implicit"}
                                           : split_list(method_list);
    std::vector<double> alphas;
    for (const auto& t : split_list(alpha_list)) alphas.push_back(std::stod(t));
    std::vector<std::string> bnames =
        boundary_list.empty() ? std::vector<std::string>{o.boundary} : split_list(boundary_list);

    int worst = kOk;
    std::ofstream fit_csv;
    if (do_fit) {
        fit_csv.open(dir / (o.prefix + "_rates.csv"));
        fit_csv << "# plap-csv v1\nalpha,mu,points\n";
    }
    std::vector<std::pair<double, double>> fitted;
    for (const auto& m : methods)
        for (const auto& bn : bnames)
            for (int n : ns) {
                auto one_case = [&](double a, bool use_alpha) {
                    CommonOpts c = o;
                    c.method = m;
                    c.boundary = bn;
                    if (c.exact == "boundary") c.exact = bn;
                    PWeights w = use_alpha ? PWeights::from_alpha(a) : o.weights();
                    std::vector<std::unique_ptr<Grid2D>> grids;
                    const Grid2D* g = nullptr;
                    RunOutput r = run_one(c, n, w, bn, g, grids);
                    std::ostringstream name;
                    name << o.prefix << "_" << m << "_" << bn << "_n" << n;
                    if (use_alpha) name << "_alpha" << a;
                    write_solve_report((dir / (name.str() + "_report.csv")).string(),
                                       r.result.report);
                    std::cout << name.str() << ": " << r.result.report.iters << " iters, delta "
                              << r.result.report.final_delta << "\n";
                    worst = std::max(worst, r.status);
                    if (do_fit) {
                        RateFit f = fit_rate(r.result.report, a);
                        fit_csv << a << ',' << f.mu << ',' << f.points << "\n";
                        if (!f.floor_case) fitted.emplace_back(a, f.mu);
                    }
                };
                if (alphas.empty()) one_case(0.0, false);
                else
                    for (double a : alphas) one_case(a, true);
            }
    if (do_fit && fitted.size() >= 2) {
        double sn = (double)fitted.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto& [a, mu] : fitted) {
            sx += a;
            sy += mu;
            sxx += a * a;
            sxy += a * mu;
        }
        double slope = (sn * sxy - sx * sy) / (sn * sxx - sx * sx);
        double icpt = (sy - slope * sx) / sn;
        std::cout << "rate fit: mu(alpha) ~ " << slope << " * alpha + " << icpt << "\n";
    }
    return worst;
}

int cmd_consistency(const CommonOpts& o, double px, double py, const std::string& h_list) {
    fs::path dir = output_dir(o.out_dir);
    // scheme error for u = x + x y against the exact operator, per level and h
    auto u = [](double x, double y) { return x + x * y; };
    double gx = 1.0 + py, gy = px;
    double nrm2 = gx * gx + gy * gy;
    if (nrm2 <= 0) throw std::invalid_argument("consistency: gradient vanishes at the point");
    double exact = 2.0 * gx * gy / nrm2;
    std::vector<double> hs;
    for (const auto& t : split_list(h_list)) hs.push_back(std::stod(t));
    if (hs.empty()) hs = {1.0 / 32, 1.0 / 64, 1.0 / 128};
    std::ofstream os(dir / (o.prefix + "_consistency.csv"));
    if (!os) throw std::runtime_error("cannot open consistency csv");
    os << "# plap-csv v1\nlevel,dtheta,h,error\n";
    for (int lvl = 1; lvl <= 3; ++lvl) {
        Stencil s = build_stencil(lvl);
        for (double h : hs) {
            double mx = -1e300, mn = 1e300;
            for (const auto& d : s.directions) {
                double v = (u(px + d.dx * h, py + d.dy * h) - u(px, py)) /
                           ((d.dx * d.dx + d.dy * d.dy) * h * h);
                mx = std::max(mx, v);
                mn = std::min(mn, v);
            }
            os << lvl << ',' << s.dtheta << ',' << h << ',' << std::abs(mx + mn - exact) << "\n";
        }
    }
    std::cout << "consistency study written for point (" << px << ", " << py << ")\n";
    return kOk;
}

int cmd_failure_demo(const CommonOpts& o) {
    fs::path dir = output_dir(o.out_dir);
    CommonOpts c = o;
    c.method = "standard";
    if (c.init == "harmonic") c.init = "boundary-extension"; // demo default
    std::vector<std::unique_ptr<Grid2D>> grids;
    const Grid2D* g = nullptr;
    RunOutput r = run_one(c, c.n, PWeights::from_p(std::numeric_limits<double>::infinity()),
                          c.boundary, g, grids);
    write_grid_function((dir / (o.prefix + "_solution.csv")).string(), r.result.u);
    write_solve_report((dir / (o.prefix + "_report.csv")).string(), r.result.report);
    // distances to the kinked cone vs the smooth solution over the central quarter
    GridFunction cone = sample(exact_solution("cone_diff").value, *g);
    GridFunction smooth = sample(exact_solution("aronsson").value, *g);
    double cx = 0.5 * (g->xmin + g->xmax), cy = 0.5 * (g->ymin + g->ymax);
    double qx = 0.25 * (g->xmax - g->xmin), qy = 0.25 * (g->ymax - g->ymin);
    double d_cone = 0, d_smooth = 0;
    for (int j = 0; j < g->n; ++j)
        for (int i = 0; i < g->n; ++i) {
            if (std::abs(g->x(i) - cx) > qx || std::abs(g->y(j) - cy) > qy) continue;
            d_cone = std::max(d_cone, std::abs(r.result.u.at(i, j) - cone.at(i, j)));
            d_smooth = std::max(d_smooth, std::abs(r.result.u.at(i, j) - smooth.at(i, j)));
        }
    std::cout << "central-quarter max distance: to cone_diff " << d_cone << ", to aronsson "
              << d_smooth << "\n";
    return r.status;
}

int cmd_contraction_model(const CommonOpts& o, int n_max) {
    fs::path dir = output_dir(o.out_dir);
    std::ofstream os(dir / (o.prefix + "_contraction.csv"));
    if (!os) throw std::runtime_error("cannot open contraction csv");
    os << "# plap-csv v1\nn,rate\n";
    for (int n = 3; n <= n_max; ++n) os << n << ',' << contraction_rate_model(n) << "\n";
    std::cout << "rate(4) = " << contraction_rate_model(4) << ", rate(" << n_max
              << ") = " << contraction_rate_model(n_max) << "\n";
    return kOk;
}

// merge a key=value config file into the token stream so its values are
// parsed last (the file wins on conflict, with a warning)
std::vector<std::string> merge_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string cfg_path;
    for (size_t k = 0; k + 1 < args.size(); ++k)
        if (args[k] == "--config") cfg_path = args[k + 1];
    if (cfg_path.empty()) return args;
    std::ifstream is(cfg_path);
    if (!is) throw std::runtime_error("cannot open config file '" + cfg_path + "'");
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") continue;
        std::string flag = "--" + key;
        for (const auto& a : args)
            if (a == flag)
                std::cerr << "warning: " << flag << " from '" << cfg_path
                          << "' overrides the command line\n";
        args.push_back(flag);
        args.push_back(val);
    }
    return args;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wide-stencil solvers for the infinity Laplacian and p-Laplacian"};
    app.require_subcommand(1);

    CommonOpts o;
    auto* c_solve = app.add_subcommand("solve", "solve one Dirichlet problem");
    o.attach(c_solve);

    auto* c_sweep = app.add_subcommand("sweep", "run a family of solves");
    o.attach(c_sweep);
    std::string n_list, method_list = "semi-implicit", alpha_list, boundary_list;
    bool do_fit = false;
    c_sweep->add_option("--n-list", n_list, "comma-separated grid sizes");
    c_sweep->add_option("--method-list", method_list, "explicit, semi-implicit or both");
    c_sweep->add_option("--alpha-list", alpha_list, "comma-separated alpha values");
    c_sweep->add_option("--boundary-list", boundary_list, "comma-separated boundary names");
    c_sweep->add_flag("--fit-rate", do_fit, "fit error ~ 10^{mu N} per case and mu(alpha)");

    auto* c_cons = app.add_subcommand("consistency", "scheme error vs h per stencil");
    o.attach(c_cons);
    double px = -0.6, py = -0.4;
    std::string h_list;
    c_cons->add_option("--x", px, "evaluation point x");
    c_cons->add_option("--y", py, "evaluation point y");
    c_cons->add_option("--h-list", h_list, "comma-separated spatial steps");

    auto* c_fail = app.add_subcommand("failure-demo",
                                      "solve with the non-monotone centered scheme");
    o.attach(c_fail);

    auto* c_contr = app.add_subcommand("contraction-model", "linear-model contraction rates");
    o.attach(c_contr);
    int n_max = 1025;
    c_contr->add_option("--n-max", n_max, "largest grid size tabulated");

    // config-file values are appended after the flags; last one wins
    for (auto* sub : app.get_subcommands({}))
        for (auto* opt : sub->get_options())
            opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    try {
        auto args = merge_config(argc, argv);
        std::vector<const char*> cargs = {argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        try {
            app.parse((int)cargs.size(), cargs.data());
        } catch (const CLI::ParseError& e) {
            return app.exit(e) == 0 ? kOk : kConfigErr;
        }
        if (c_solve->parsed()) return cmd_solve(o);
        if (c_sweep->parsed()) return cmd_sweep(o, n_list, method_list, alpha_list,
                                                boundary_list, do_fit);
        if (c_cons->parsed()) return cmd_consistency(o, px, py, h_list);
        if (c_fail->parsed()) return cmd_failure_demo(o);
        if (c_contr->parsed()) return cmd_contraction_model(o, n_max);
        return kConfigErr;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigErr;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoErr;
    }
}

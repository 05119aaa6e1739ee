#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "stmg/cycles.hpp"
#include "stmg/heat.hpp"
#include "stmg/lfa.hpp"
#include "stmg/smoother.hpp"

namespace stmg::cli {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct OmegaChoice {
    OmegaMode mode = OmegaMode::Fixed;
    double value = 0.5;
};

OmegaChoice parse_omega(const std::string& s) {
    if (s == "theorem") return {OmegaMode::Theorem, 0.0};
    if (s == "numeric") return {OmegaMode::Numeric, 0.0};
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw UsageError("--omega expects a number, 'theorem' or 'numeric', got '" + s + "'");
    }
    if (!(v > 0.0 && v <= 1.0)) throw UsageError("--omega must lie in (0, 1]");
    return {OmegaMode::Fixed, v};
}

std::vector<double> parse_sigma_range(const std::string& s) {
    double lo = 0, hi = 0;
    long count = 0;
    char extra = 0;
    if (std::sscanf(s.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &count, &extra) != 3 || !(lo > 0.0) || hi < lo ||
        count < 1) {
        throw UsageError("--sigma-range expects min:max:count with 0 < min <= max, got '" + s + "'");
    }
    std::vector<double> out;
    for (long k = 0; k < count; ++k) {
        const double f = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
        out.push_back(std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))));
    }
    return out;
}

// Writes to --output when given, otherwise to the supplied stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file '" + path + "'");
        }
        os_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& os() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

struct SweepFlags {
    int nu1 = 3, nu2 = 3, eta1 = 3, eta2 = 3;

    void add(CLI::App* app) {
        app->add_option("--nu1", nu1, "fine-level pre-smoothing sweeps")->capture_default_str();
        app->add_option("--nu2", nu2, "fine-level post-smoothing sweeps")->capture_default_str();
        app->add_option("--eta1", eta1, "intermediate-level pre-smoothing sweeps (original)")->capture_default_str();
        app->add_option("--eta2", eta2, "intermediate-level post-smoothing sweeps (original)")->capture_default_str();
    }
    void echo(std::ostream& os) const {
        os << "# nu1=" << nu1 << "\n# nu2=" << nu2 << "\n# eta1=" << eta1 << "\n# eta2=" << eta2 << "\n";
    }
    LfaConfig lfa(double sigma, double omega, std::size_t resolution) const {
        LfaConfig c;
        c.sigma = sigma;
        c.omega = omega;
        c.nu1 = nu1;
        c.nu2 = nu2;
        c.eta1 = eta1;
        c.eta2 = eta2;
        c.resolution = resolution;
        return c;
    }
};

struct SolveFlags {
    std::size_t nx = 63;
    std::size_t nt = 2624;
    double horizon = 0.1;
    std::string regime;
    std::string strategy = "new";
    std::string omega = "0.5";
    SweepFlags sweeps;
    std::size_t iters = 10;
    std::uint64_t seed = 1;
    int depth = 0;
    double tol = 0.0;
    std::size_t resolution = 128;
    std::string output;
};

int cmd_solve(const SolveFlags& f, std::ostream& out) {
    std::size_t nx = f.nx, nt = f.nt;
    if (f.regime == "small") {
        nx = 63;
        nt = 2624;
    } else if (f.regime == "large") {
        nx = 511;
        nt = 40;
    } else if (!f.regime.empty()) {
        throw UsageError("--regime expects 'small' or 'large'");
    }
    const SpaceTimeGrid grid(nx, nt, f.horizon);
    CyclePlan plan;
    plan.strategy = parse_strategy(f.strategy);
    if (plan.strategy != CoarseningStrategy::New && plan.strategy != CoarseningStrategy::Original) {
        throw UsageError("--strategy must be 'original' or 'new'");
    }
    const OmegaChoice oc = parse_omega(f.omega);
    plan.omega_mode = oc.mode;
    plan.omega = oc.mode == OmegaMode::Fixed ? oc.value : 0.5;
    plan.nu1 = f.sweeps.nu1;
    plan.nu2 = f.sweeps.nu2;
    plan.eta1 = f.sweeps.eta1;
    plan.eta2 = f.sweeps.eta2;
    plan.depth = f.depth;
    plan.lfa_resolution = f.resolution;
    plan.validate();
    const bool ok = plan.strategy == CoarseningStrategy::New
                        ? grid.admits(4, 2)
                        : grid.admits(2, 2) && coarsen_grid(grid, 2, 2).admits(2, 1);
    if (!ok) {
        throw UsageError("grid n_x=" + std::to_string(nx) + ", n_t=" + std::to_string(nt) +
                         " does not admit the " + f.strategy + " coarsening");
    }

    const HeatOperator op = assemble_operator(grid);
    const ProblemData data = [&] {
        ProblemData p = ProblemData::benchmark();
        p.horizon = f.horizon;
        return p;
    }();
    const SpaceTimeField rhs = assemble_rhs(grid, data);

    Sink sink(f.output, out);
    std::ostream& os = sink.os();
    const SolveResult r = solve(op, rhs, plan, f.iters, f.tol, f.seed);

    os << "# stmg solve\n# nx=" << nx << "\n# nt=" << nt << "\n# T=" << num(f.horizon) << "\n# h=" << num(grid.h())
       << "\n# tau=" << num(grid.tau()) << "\n# sigma=" << num(grid.sigma()) << "\n# strategy=" << f.strategy
       << "\n# omega_mode=" << f.omega << "\n# omega=" << num(r.omega) << "\n";
    f.sweeps.echo(os);
    os << "# depth=" << f.depth << "\n# iters=" << f.iters << "\n# tol=" << num(f.tol) << "\n# seed=" << f.seed
       << "\n# source=x^4(1-x)^4+10sin(8t)\n# initial=0\n# reference=direct_solve\n";
    os << "# wall_time_s excludes the reference solve and is not reproducible\n";
    os << "iteration,error_LinfL2,cumulative_block_solves,wall_time_s,residual_max,cumulative_work\n";
    for (std::size_t k = 0; k < r.error_history.size(); ++k) {
        os << k << ',' << num(r.error_history[k]) << ',' << r.cumulative_block_solves[k] << ','
           << num(r.wall_time_s[k]) << ',' << num(r.residual_history[k]) << ','
           << r.cumulative_work[k] << '\n';
    }
    return 0;
}

int cmd_lfa_smoothing(const std::string& strategy_name, const std::string& omega, const std::string& range,
                      const std::string& output, std::ostream& out) {
    const CoarseningStrategy s = parse_strategy(strategy_name);
    const auto sigmas = parse_sigma_range(range);
    if (omega != "0.5" && omega != "theorem" && omega != "both") {
        throw UsageError("--omega expects 0.5, theorem or both");
    }
    Sink sink(output, out);
    std::ostream& os = sink.os();
    os << "# stmg lfa-smoothing\n# strategy=" << strategy_name << "\n# omega=" << omega << "\n# sigma_range=" << range
       << "\n";
    if (omega == "both") {
        os << "sigma,omega_used,mu_S,mu_S_half,efficiency\n";
    } else {
        os << "sigma,omega_used,mu_S\n";
    }
    for (double sigma : sigmas) {
        const double w = omega == "0.5" ? 0.5 : optimal_omega(s, sigma);
        const double mu = smoothing_factor(s, w, sigma);
        os << num(sigma) << ',' << num(w) << ',' << num(mu);
        if (omega == "both") {
            const double half = smoothing_factor(s, 0.5, sigma);
            os << ',' << num(half) << ',' << num(std::log(mu) / std::log(half));
        }
        os << '\n';
    }
    return 0;
}

int cmd_lfa_rho(const std::string& omega, const SweepFlags& sw, const std::string& range, std::size_t resolution,
                const std::string& output, std::ostream& out) {
    const OmegaChoice oc = parse_omega(omega);
    const auto sigmas = parse_sigma_range(range);
    sw.lfa(1.0, 0.5, resolution).validate();
    Sink sink(output, out);
    std::ostream& os = sink.os();
    os << "# stmg lfa-rho\n# omega=" << omega << "\n# sigma_range=" << range << "\n# resolution=" << resolution
       << "\n";
    sw.echo(os);
    os << "sigma,rho_original,rho_new,omega_original,omega_new\n";
    for (double sigma : sigmas) {
        double rho[2], w[2];
        const CoarseningStrategy strategies[2] = {CoarseningStrategy::Original, CoarseningStrategy::New};
        for (int k = 0; k < 2; ++k) {
            LfaConfig cfg = sw.lfa(sigma, 0.5, resolution);
            if (oc.mode == OmegaMode::Numeric) {
                const OmegaOpt o = omega_opt_numeric(strategies[k], cfg);
                w[k] = o.omega;
                rho[k] = o.rho;
                continue;
            }
            w[k] = oc.mode == OmegaMode::Theorem ? optimal_omega(strategies[k], sigma) : oc.value;
            cfg.omega = w[k];
            rho[k] = spectral_radius_bar(strategies[k], cfg).rho;
        }
        os << num(sigma) << ',' << num(rho[0]) << ',' << num(rho[1]) << ',' << num(w[0]) << ',' << num(w[1]) << '\n';
    }
    return 0;
}

int cmd_lfa_modes(const std::string& strategy_name, double sigma, const std::string& omega, const SweepFlags& sw,
                  std::size_t resolution, bool identity, const std::string& output, std::ostream& out) {
    const CoarseningStrategy s = parse_strategy(strategy_name);
    if (s != CoarseningStrategy::New && s != CoarseningStrategy::Original) {
        throw UsageError("--strategy must be 'original' or 'new'");
    }
    const OmegaChoice oc = parse_omega(omega);
    LfaConfig cfg = sw.lfa(sigma, 0.5, 16);
    if (oc.mode == OmegaMode::Fixed) cfg.omega = oc.value;
    if (oc.mode == OmegaMode::Theorem) cfg.omega = optimal_omega(s, sigma);
    if (oc.mode == OmegaMode::Numeric) {
        LfaConfig search = cfg;
        search.resolution = 128;
        cfg.omega = omega_opt_numeric(s, search).omega;
    }
    cfg.validate();
    const ModeMap map = identity ? low_mode_action([](Frequency) { return std::optional(HarmonicMatrix::identity()); },
                                                   resolution)
                                 : low_mode_action(s, cfg, resolution);
    Sink sink(output, out);
    std::ostream& os = sink.os();
    os << "# stmg lfa-modes\n# strategy=" << strategy_name << "\n# sigma=" << num(sigma) << "\n# omega=" << num(cfg.omega)
       << "\n# resolution=" << resolution << "\n# matrix=" << (identity ? "identity" : "cycle") << "\n";
    sw.echo(os);
    os << "theta_t,theta_x,coeff_modulus\n";
    for (std::size_t it = 0; it < map.n; ++it)
        for (std::size_t ix = 0; ix < map.n; ++ix)
            os << num(map.theta[it]) << ',' << num(map.theta[ix]) << ',' << num(map.at(it, ix)) << '\n';
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Space-time multigrid for the heat equation: solver runs and Fourier analysis", "stmg"};
    app.require_subcommand(1);

    SolveFlags sf;
    auto* solve_cmd = app.add_subcommand("solve", "iterate a multigrid cycle on the benchmark heat problem");
    solve_cmd->add_option("--nx", sf.nx, "interior spatial points")->capture_default_str();
    solve_cmd->add_option("--nt", sf.nt, "time steps")->capture_default_str();
    solve_cmd->add_option("--T", sf.horizon, "time horizon")->capture_default_str();
    solve_cmd->add_option("--regime", sf.regime, "preset grid: small (sigma~0.156) or large (sigma~655)");
    solve_cmd->add_option("--strategy", sf.strategy, "original or new")->capture_default_str();
    solve_cmd->add_option("--omega", sf.omega, "damping: number, theorem or numeric")->capture_default_str();
    sf.sweeps.add(solve_cmd);
    solve_cmd->add_option("--iters", sf.iters, "maximum iterations")->capture_default_str();
    solve_cmd->add_option("--seed", sf.seed, "seed of the random initial guess")->capture_default_str();
    solve_cmd->add_option("--depth", sf.depth, "coarse recursion depth (1 = basic cycle, 0 = full)")
        ->capture_default_str();
    solve_cmd->add_option("--tol", sf.tol, "stop once the error is at most this")->capture_default_str();
    solve_cmd->add_option("--resolution", sf.resolution, "LFA samples per axis for --omega numeric")
        ->capture_default_str();
    solve_cmd->add_option("--output", sf.output, "CSV path (default stdout)");

    std::string sm_strategy = "full", sm_omega = "both", sm_range = "1e-3:1e3:24", sm_output;
    auto* sm_cmd = app.add_subcommand("lfa-smoothing", "smoothing factors over a sigma range");
    sm_cmd->add_option("--strategy", sm_strategy, "time-semi-2, time-semi-4, space-semi, full or new")
        ->capture_default_str();
    sm_cmd->add_option("--omega", sm_omega, "0.5, theorem or both")->capture_default_str();
    sm_cmd->add_option("--sigma-range", sm_range, "min:max:count, log spaced")->capture_default_str();
    sm_cmd->add_option("--output", sm_output, "CSV path (default stdout)");

    std::string rho_omega = "0.5", rho_range = "1e-3:1e3:24", rho_output;
    std::size_t rho_res = 128;
    SweepFlags rho_sw;
    auto* rho_cmd = app.add_subcommand("lfa-rho", "predicted convergence factors of both strategies");
    rho_cmd->add_option("--omega", rho_omega, "number, theorem or numeric")->capture_default_str();
    rho_sw.add(rho_cmd);
    rho_cmd->add_option("--sigma-range", rho_range, "min:max:count, log spaced")->capture_default_str();
    rho_cmd->add_option("--resolution", rho_res, "samples per axis of the low-frequency box")->capture_default_str();
    rho_cmd->add_option("--output", rho_output, "CSV path (default stdout)");

    std::string md_strategy = "new", md_omega = "theorem", md_output;
    double md_sigma = 1.0;
    std::size_t md_res = 64;
    bool md_identity = false;
    SweepFlags md_sw;
    auto* md_cmd = app.add_subcommand("lfa-modes", "action of one cycle on the low-frequency modes");
    md_cmd->add_option("--strategy", md_strategy, "original or new")->capture_default_str();
    md_cmd->add_option("--sigma", md_sigma, "anisotropy tau/h^2")->capture_default_str();
    md_cmd->add_option("--omega", md_omega, "number, theorem or numeric")->capture_default_str();
    md_sw.add(md_cmd);
    md_cmd->add_option("--resolution", md_res, "grid points per axis (multiple of 8)")->capture_default_str();
    md_cmd->add_flag("--identity", md_identity, "use the identity in place of the cycle (input pattern)");
    md_cmd->add_option("--output", md_output, "CSV path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "stmg: " << e.what() << "\n";
        return 2;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(sf, out);
        if (sm_cmd->parsed()) return cmd_lfa_smoothing(sm_strategy, sm_omega, sm_range, sm_output, out);
        if (rho_cmd->parsed()) return cmd_lfa_rho(rho_omega, rho_sw, rho_range, rho_res, rho_output, out);
        if (md_cmd->parsed())
            return cmd_lfa_modes(md_strategy, md_sigma, md_omega, md_sw, md_res, md_identity, md_output, out);
    } catch (const UsageError& e) {
        err << "stmg: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace stmg::cli

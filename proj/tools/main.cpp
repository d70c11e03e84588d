#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lorenzn/chaos.hpp"
#include "lorenzn/covering.hpp"
#include "lorenzn/csv.hpp"
#include "lorenzn/dynamics.hpp"
#include "lorenzn/integrate.hpp"
#include "lorenzn/scenario.hpp"
#include "lorenzn/svg.hpp"
#include "lorenzn/types.hpp"

using namespace lorenzn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

Vec3 parse_triple(const std::string& s, const std::string& flag) {
    std::istringstream ss(s);
    Vec3 v{};
    char comma;
    if (!(ss >> v[0] >> comma >> v[1] >> comma >> v[2]) || !ss.eof())
        throw ConfigError(flag + ": expected three comma-separated numbers, got '" + s +
                          "'");
    return v;
}

Family parse_family(const std::string& s) {
    if (s == "standard") return Family::Standard;
    if (s == "l2") return Family::L2;
    if (s == "l1") return Family::L1;
    if (s == "ln") return Family::Ln;
    throw ConfigError("--system: expected standard|l2|l1|ln, got '" + s + "'");
}

// Flags shared by every subcommand that names a system.
struct SystemFlags {
    std::string system = "l2";
    int n = 2;
    std::string params;  // comma triple; meaning depends on the family

    SystemSpec resolve() const {
        SystemSpec spec;
        spec.family = parse_family(system);
        spec.n = n;
        if (spec.family == Family::Ln && spec.n < 1)
            throw ConfigError("--n: n must be >= 1 for system ln");
        if (spec.family == Family::Standard) {
            StandardParams p = StandardParams::canonical();
            if (!params.empty()) {
                const Vec3 v = parse_triple(params, "--params");
                p = {v[0], v[1], v[2]};
            }
            spec.params = p;
        } else if (!params.empty()) {
            const Vec3 v = parse_triple(params, "--params");
            NormalizedParams p{v[0], v[1], v[2]};
            p.validate();
            spec.params = p;
        } else {
            spec.params = params_normalize(StandardParams::canonical());
        }
        spec.validate();
        return spec;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--system", system,
                        "System family: standard|l2|l1|ln (default l2)");
        cmd->add_option("--n", n, "Fold count for --system ln (default 2)");
        cmd->add_option("--params", params,
                        "Parameter triple: sigma,rayleigh,b for standard; "
                        "mu,beta,gamma otherwise (default: canonical "
                        "sigma=10, rayleigh=28, b=8/3, normalized as needed)");
    }
};

struct IntegrationFlags {
    double t0 = 0.0;
    double t1 = 20.0;
    std::string mode = "adaptive";
    double step = 1e-3;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double sample_interval = 0.01;

    IntegratorConfig resolve() const {
        IntegratorConfig cfg;
        if (mode == "fixed")
            cfg.mode = StepMode::Fixed;
        else if (mode == "adaptive")
            cfg.mode = StepMode::Adaptive;
        else
            throw ConfigError("--mode: expected fixed|adaptive, got '" + mode + "'");
        cfg.step = step;
        cfg.rel_tol = rel_tol;
        cfg.abs_tol = abs_tol;
        cfg.sample_interval = sample_interval;
        return cfg;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--t0", t0, "Start time (default 0)");
        cmd->add_option("--t1", t1, "End time (default 20)");
        cmd->add_option("--mode", mode, "Stepping: fixed|adaptive (default adaptive)");
        cmd->add_option("--step", step, "Fixed-mode step size (default 1e-3)");
        cmd->add_option("--rel-tol", rel_tol, "Adaptive relative tolerance (default 1e-9)");
        cmd->add_option("--abs-tol", abs_tol, "Adaptive absolute tolerance (default 1e-12)");
        cmd->add_option("--sample-interval", sample_interval,
                        "Output sample cadence (default 0.01)");
    }
};

void annotate(Trajectory& traj, const SystemSpec& spec) {
    traj.meta["system"] = family_name(spec.family);
    if (spec.family == Family::Ln) traj.meta["n"] = std::to_string(spec.n);
    if (spec.family == Family::Standard) {
        const auto& p = spec.standard_params();
        traj.meta["params"] = "sigma=" + format_double(p.sigma) +
                              ";rayleigh=" + format_double(p.rayleigh) +
                              ";b=" + format_double(p.b);
    } else {
        const auto& p = spec.normalized_params();
        traj.meta["params"] = "mu=" + format_double(p.mu) + ";beta=" +
                              format_double(p.beta) + ";gamma=" + format_double(p.gamma);
    }
}

Trajectory simulate_spec(const SystemSpec& spec, const Vec3& s0, double t0, double t1,
                         const IntegratorConfig& cfg) {
    Trajectory traj = integrate(make_field(spec), s0, t0, t1, cfg);
    traj.kind = native_coords(spec.family);
    annotate(traj, spec);
    return traj;
}

// Scenario files are looked up as given first, then under
// $LORENZN_SCENARIO_DIR if the path is relative.
std::string resolve_scenario_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (!fs::path(path).is_absolute()) {
        if (const char* dir = std::getenv("LORENZN_SCENARIO_DIR")) {
            const fs::path candidate = fs::path(dir) / path;
            if (fs::exists(candidate)) return candidate.string();
        }
    }
    return path;  // let load_scenario report the failure
}

// ---- simulate --------------------------------------------------------------

int cmd_simulate(const SystemFlags& sys, const IntegrationFlags& integ,
                 const std::string& x0, const std::string& scenario_path,
                 const std::string& out, const CLI::App* cmd) {
    if (!scenario_path.empty()) {
        Scenario sc = load_scenario(resolve_scenario_path(scenario_path));
        // Flags override the file.
        if (cmd->count("--system") || cmd->count("--n") || cmd->count("--params")) {
            SystemFlags merged = sys;
            sc.system = merged.resolve();
        }
        if (cmd->count("--t0")) sc.t0 = integ.t0;
        if (cmd->count("--t1")) sc.t1 = integ.t1;
        if (cmd->count("--mode") || cmd->count("--step") || cmd->count("--rel-tol") ||
            cmd->count("--abs-tol") || cmd->count("--sample-interval")) {
            IntegrationFlags merged = integ;
            sc.integrator = merged.resolve();
        }
        if (!x0.empty()) {
            sc.initial_state = parse_triple(x0, "--x0");
            sc.initial_state_set = true;
        }
        const Vec3 s0 =
            sc.initial_state_set ? sc.initial_state : default_initial_state(sc.system);
        Trajectory traj = simulate_spec(sc.system, s0, sc.t0, sc.t1, sc.integrator);
        std::string last_path;
        for (const OutputSpec& o : sc.outputs) {
            std::string path = o.path;
            if (!out.empty() && o.kind == OutputSpec::Kind::Csv) path = out;
            if (o.kind == OutputSpec::Kind::Csv) {
                write_csv(traj.to_cartesian(), path);
            } else {
                RenderOptions ro;
                ro.projection = o.projection;
                ro.color_by_branch = (o.color_by == "branch");
                render_svg_file(traj.to_cartesian(), ro, path);
            }
            last_path = path;
        }
        std::cout << "samples=" << traj.size() << " t0=" << sc.t0 << " t1=" << sc.t1
                  << " final=" << format_double(traj.states.back()[0]) << ","
                  << format_double(traj.states.back()[1]) << ","
                  << format_double(traj.states.back()[2]) << "\n";
        return kExitOk;
    }

    if (out.empty()) throw ConfigError("--out is required (or use --scenario)");
    const SystemSpec spec = sys.resolve();
    const Vec3 s0 = x0.empty() ? default_initial_state(spec) : parse_triple(x0, "--x0");
    if ((spec.family == Family::L1 || spec.family == Family::Ln)) {
        const CartesianState c{s0[0], s0[1], s0[2]};
        // --x0 is Cartesian on the CLI; convert for the polar families.
        if (c.radius() < kRadiusMin)
            throw NumericalFailure(
                "simulate: initial state lies on the z-axis, outside the quotient "
                "field's domain",
                integ.t0, s0);
    }
    Vec3 s0_native = s0;
    if (native_coords(spec.family) == CoordKind::Polar)
        s0_native = PolarState::from_cartesian({s0[0], s0[1], s0[2]}).to_array();

    const Trajectory traj =
        simulate_spec(spec, s0_native, integ.t0, integ.t1, integ.resolve());
    write_csv(traj.to_cartesian(), out);
    std::cout << "samples=" << traj.size() << " t0=" << integ.t0 << " t1=" << integ.t1
              << " final=" << format_double(traj.states.back()[0]) << ","
              << format_double(traj.states.back()[1]) << ","
              << format_double(traj.states.back()[2]) << "\n";
    return kExitOk;
}

// ---- transform -------------------------------------------------------------

int cmd_transform(const std::string& direction, double sigma, double rayleigh, double b,
                  const std::string& in, const std::string& out) {
    const StandardParams p{sigma, rayleigh, b};
    p.validate();
    if (!(p.rayleigh > 1.0))
        throw ConfigError("transform: requires rayleigh > 1 (got " +
                          format_double(p.rayleigh) + ")");
    const Trajectory traj = read_csv(in);
    if (traj.kind != CoordKind::Cartesian)
        throw ConfigError("transform: input must be a Cartesian trajectory");

    Trajectory result = traj;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const CartesianState s = traj.cartesian_at(i);
        const TimedState ts = (direction == "std-to-l2")
                                  ? state_normalize(s, traj.times[i], p)
                                  : state_denormalize(s, traj.times[i], p);
        result.states[i] = ts.state.to_array();
        result.times[i] = ts.time;
    }
    result.meta["transform"] = direction;
    result.meta["transform_params"] = "sigma=" + format_double(sigma) +
                                      ";rayleigh=" + format_double(rayleigh) +
                                      ";b=" + format_double(b);
    write_csv(result, out);
    std::cout << "transformed " << result.size() << " samples (" << direction << ")\n";
    return kExitOk;
}

// ---- cover / factor / extend -----------------------------------------------

int cmd_cover(int n, const std::string& in, const std::string& out, bool drop_colors) {
    const Trajectory traj = read_csv(in).to_cartesian();
    Trajectory covered;
    try {
        covered = cover_trajectory(traj, n);
    } catch (const DomainError& e) {
        throw NumericalFailure(e.what(), 0.0, Vec3{});
    }
    if (drop_colors) covered.colors.clear();
    write_csv(covered, out);
    std::cout << (drop_colors ? "factored " : "covered ") << covered.size()
              << " samples (n=" << n << ")\n";
    return kExitOk;
}

int cmd_extend(int n, int color, const std::string& in, const std::string& x0,
               const IntegrationFlags& integ, const std::string& out) {
    CartesianState q;
    if (!in.empty()) {
        const Trajectory down = read_csv(in).to_cartesian();
        if (down.size() == 0) throw ConfigError("extend: input trajectory is empty");
        q = down.cartesian_at(0);
    } else if (!x0.empty()) {
        const Vec3 v = parse_triple(x0, "--x0");
        q = {v[0], v[1], v[2]};
    } else {
        throw ConfigError("extend: either --in or --x0 is required");
    }
    if (color < 0 || color >= n)
        throw ConfigError("extend: --color must be in [0, n)");

    std::vector<ColoredPoint> pre;
    try {
        pre = branch_preimages(q, n);
    } catch (const DomainError& e) {
        throw NumericalFailure(e.what(), 0.0, q.to_array());
    }
    const PolarState s0 = PolarState::from_cartesian(pre[color].base);

    SystemSpec spec;
    spec.family = Family::Ln;
    spec.n = n;
    spec.params = params_normalize(StandardParams::canonical());
    const Trajectory traj =
        simulate_spec(spec, s0.to_array(), integ.t0, integ.t1, integ.resolve());
    write_csv(traj.to_cartesian(), out);
    std::cout << "extended to L" << n << ": " << traj.size() << " samples\n";
    return kExitOk;
}

// ---- lyapunov / fixed-points / render --------------------------------------

int cmd_lyapunov(const SystemFlags& sys, const std::string& x0, double t_total,
                 double transient, double tau, double delta0, std::uint64_t seed,
                 const std::string& convergence_out) {
    const SystemSpec spec = sys.resolve();
    LyapunovConfig cfg;
    cfg.total_time = t_total;
    cfg.transient = transient;
    cfg.tau = tau;
    cfg.delta0 = delta0;
    cfg.seed = seed;

    Vec3 s0 = x0.empty() ? default_initial_state(spec) : parse_triple(x0, "--x0");
    if (!x0.empty() && native_coords(spec.family) == CoordKind::Polar)
        s0 = PolarState::from_cartesian({s0[0], s0[1], s0[2]}).to_array();

    const LyapunovEstimate est = lyapunov_max(spec, s0, cfg);
    std::cout << "lambda1=" << format_double(est.lambda1)
              << " stderr=" << format_double(est.standard_error(10)) << " seed=" << seed
              << " T=" << t_total << " tau=" << tau << " delta0=" << delta0 << "\n";
    if (!convergence_out.empty()) {
        std::ofstream f(convergence_out, std::ios::binary);
        if (!f) throw ConfigError("lyapunov: cannot open '" + convergence_out + "'");
        f << "t,lambda_running\n";
        for (const auto& [t, lam] : est.convergence)
            f << format_double(t) << ',' << format_double(lam) << "\n";
    }
    return kExitOk;
}

int cmd_fixed_points(const SystemFlags& sys) {
    const FixedPointSet fps = fixed_points(sys.resolve());
    for (const CartesianState& p : fps.points)
        std::cout << format_double(p.x) << "," << format_double(p.y) << ","
                  << format_double(p.z) << "\n";
    if (fps.axis_degenerate)
        std::cout << "# degenerate axis point (quotient singularity): "
                  << format_double(fps.axis_point.x) << ","
                  << format_double(fps.axis_point.y) << ","
                  << format_double(fps.axis_point.z) << "\n";
    return kExitOk;
}

int cmd_render(const std::string& in, const std::string& proj, const std::string& out,
               int width, int height, bool no_color) {
    const Trajectory traj = read_csv(in);
    RenderOptions opts;
    opts.projection = proj;
    opts.width = width;
    opts.height = height;
    opts.color_by_branch = !no_color;
    render_svg_file(traj, opts, out);
    std::cout << "rendered " << traj.size() << " samples to " << out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and analysis of the Lorenz system, its quotient L1, "
                 "and the Zn-extension family Ln"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Integrate a system and write a CSV trajectory");
    SystemFlags sim_sys;
    IntegrationFlags sim_integ;
    std::string sim_x0, sim_scenario, sim_out;
    sim_sys.attach(sim);
    sim_integ.attach(sim);
    sim->add_option("--x0", sim_x0,
                    "Initial state x,y,z in Cartesian coordinates (default: a "
                    "generic off-axis point)");
    sim->add_option("--scenario", sim_scenario, "Scenario JSON file (flags override it)");
    sim->add_option("--out", sim_out, "Output CSV path");

    // transform
    auto* tra = app.add_subcommand("transform",
                                   "Apply the standard<->normalized change of "
                                   "variables and time to a CSV trajectory");
    std::string tra_dir = "std-to-l2", tra_in, tra_out;
    double tra_sigma = 10.0, tra_r = 28.0, tra_b = 8.0 / 3.0;
    tra->add_option("--direction", tra_dir, "std-to-l2|l2-to-std (default std-to-l2)");
    tra->add_option("--sigma", tra_sigma, "sigma (default 10)");
    tra->add_option("--r", tra_r, "Rayleigh parameter, must be > 1 (default 28)");
    tra->add_option("--b", tra_b, "b (default 8/3)");
    tra->add_option("--in", tra_in, "Input CSV")->required();
    tra->add_option("--out", tra_out, "Output CSV")->required();

    // cover
    auto* cov = app.add_subcommand("cover",
                                   "Map a trajectory through the n-fold covering and "
                                   "attach the branch color channel");
    int cov_n = 2;
    std::string cov_in, cov_out;
    cov->add_option("--n", cov_n, "Fold count (default 2)");
    cov->add_option("--in", cov_in, "Input CSV")->required();
    cov->add_option("--out", cov_out, "Output CSV")->required();

    // factor
    auto* fac = app.add_subcommand("factor",
                                   "Factor a trajectory: 2-fold covering with the "
                                   "colors erased");
    std::string fac_in, fac_out;
    fac->add_option("--in", fac_in, "Input CSV")->required();
    fac->add_option("--out", fac_out, "Output CSV")->required();

    // extend
    auto* ext = app.add_subcommand("extend",
                                   "Simulate the Zn-extension Ln from a lifted "
                                   "initial condition");
    int ext_n = 3, ext_color = 0;
    std::string ext_in, ext_x0, ext_out;
    IntegrationFlags ext_integ;
    ext->add_option("--n", ext_n, "Fold count of the extension (default 3)");
    ext->add_option("--color", ext_color, "Initial sheet in [0, n) (default 0)");
    ext->add_option("--in", ext_in, "Downstairs CSV; its first sample is lifted");
    ext->add_option("--x0", ext_x0, "Downstairs point x,y,z to lift (alternative to --in)");
    ext_integ.attach(ext);
    ext->add_option("--out", ext_out, "Output CSV")->required();

    // lyapunov
    auto* lya = app.add_subcommand("lyapunov",
                                   "Estimate the largest Lyapunov exponent by "
                                   "two-trajectory renormalization");
    SystemFlags lya_sys;
    std::string lya_x0, lya_conv;
    double lya_t = 2000.0, lya_transient = 50.0, lya_tau = 0.5, lya_delta0 = 1e-8;
    std::uint64_t lya_seed = 0;
    lya_sys.attach(lya);
    lya->add_option("--x0", lya_x0, "Initial state x,y,z (default: generic point)");
    lya->add_option("--t-total", lya_t, "Accumulation time after transient (default 2000)");
    lya->add_option("--transient", lya_transient, "Transient to discard (default 50)");
    lya->add_option("--tau", lya_tau, "Renormalization interval (default 0.5)");
    lya->add_option("--delta0", lya_delta0, "Reference separation (default 1e-8)");
    lya->add_option("--seed", lya_seed, "Perturbation-direction seed (default 0)");
    lya->add_option("--convergence-out", lya_conv, "Write the running estimate as CSV");

    // fixed-points
    auto* fixp = app.add_subcommand("fixed-points",
                                    "List the equilibria of a system in closed form");
    SystemFlags fix_sys;
    fix_sys.attach(fixp);

    // render
    auto* ren = app.add_subcommand("render", "Render a CSV trajectory projection as SVG");
    std::string ren_in, ren_proj = "x,z", ren_out;
    int ren_w = 800, ren_h = 600;
    bool ren_nocolor = false;
    ren->add_option("--in", ren_in, "Input CSV")->required();
    ren->add_option("--proj", ren_proj, "Projection, two of x|y|z (default x,z)");
    ren->add_option("--out", ren_out, "Output SVG")->required();
    ren->add_option("--width", ren_w, "Image width in px (default 800)");
    ren->add_option("--height", ren_h, "Image height in px (default 600)");
    ren->add_flag("--no-color", ren_nocolor, "Ignore the color channel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(sim_sys, sim_integ, sim_x0, sim_scenario, sim_out, sim);
        if (tra->parsed()) {
            if (tra_dir != "std-to-l2" && tra_dir != "l2-to-std")
                throw ConfigError("--direction: expected std-to-l2|l2-to-std");
            return cmd_transform(tra_dir, tra_sigma, tra_r, tra_b, tra_in, tra_out);
        }
        if (cov->parsed()) {
            if (cov_n < 1) throw ConfigError("--n: n must be >= 1");
            return cmd_cover(cov_n, cov_in, cov_out, false);
        }
        if (fac->parsed()) return cmd_cover(2, fac_in, fac_out, true);
        if (ext->parsed()) {
            if (ext_n < 1) throw ConfigError("--n: n must be >= 1");
            return cmd_extend(ext_n, ext_color, ext_in, ext_x0, ext_integ, ext_out);
        }
        if (lya->parsed())
            return cmd_lyapunov(lya_sys, lya_x0, lya_t, lya_transient, lya_tau, lya_delta0,
                                lya_seed, lya_conv);
        if (fixp->parsed()) return cmd_fixed_points(fix_sys);
        if (ren->parsed())
            return cmd_render(ren_in, ren_proj, ren_out, ren_w, ren_h, ren_nocolor);
        return kExitConfig;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << " at t=" << e.time << " state=("
                  << e.state[0] << ", " << e.state[1] << ", " << e.state[2] << ")\n";
        return kExitNumerical;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

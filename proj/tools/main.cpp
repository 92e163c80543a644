// Command-line front end: sweeps, window reports, closed-form profiles,
// simulations, solver comparison. All numeric output is 17-significant-digit
// scientific CSV so runs diff cleanly.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "aptring/closed_form.hpp"
#include "aptring/diagnostics.hpp"
#include "aptring/fd_solver.hpp"
#include "aptring/field.hpp"
#include "aptring/params.hpp"
#include "aptring/propagator.hpp"
#include "aptring/scenario.hpp"
#include "aptring/spectrum.hpp"

namespace fs = std::filesystem;
using namespace aptring;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

/// Relative output paths resolve under $APTRING_OUT_ROOT when it is set.
std::string resolve_path(const std::string& path) {
    if (path.empty() || fs::path(path).is_absolute()) return path;
    const char* root = std::getenv("APTRING_OUT_ROOT");
    if (!root || !*root) return path;
    return (fs::path(root) / path).string();
}

std::ofstream open_output(const std::string& path) {
    const std::string resolved = resolve_path(path);
    const fs::path parent = fs::path(resolved).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    std::ofstream out(resolved);
    if (!out) throw ConfigError("cannot open `" + resolved + "` for writing");
    return out;
}

PhysicalParams load_material_file(const std::string& path) {
    const KeyValues kv = parse_key_value_file(path);
    validate_keys(kv, material_keys(), path);
    return physical_params_from_config(kv);
}

// ---------------------------------------------------------------------- spectrum

struct SpectrumArgs {
    std::string params_file;
    double radius_mm = 21.0;
    int n = 1;
    double v_min = 0.0;
    double v_max = 8.4;
    int steps = 201;
    std::string out;
};

int cmd_spectrum(const SpectrumArgs& args) {
    const PhysicalParams p = load_material_file(args.params_file);
    const RingGeometry geom{args.radius_mm, 0.0};
    const ModeSpec mode = make_mode(args.n, geom);
    const auto sweep = sweep_spectrum(mode.kappa, p, args.v_min, args.v_max, args.steps);

    std::ostringstream csv;
    csv << "v_mm_per_s,re_omega_plus,im_omega_plus,re_omega_minus,im_omega_minus,phase\n";
    for (const auto& pt : sweep) {
        csv << format_float(pt.v) << ',' << format_float(pt.report.omega_plus.real())
            << ',' << format_float(pt.report.omega_plus.imag()) << ','
            << format_float(pt.report.omega_minus.real()) << ','
            << format_float(pt.report.omega_minus.imag()) << ','
            << phase_name(pt.report.phase) << '\n';
    }
    if (args.out.empty()) {
        std::cout << csv.str();
    } else {
        open_output(args.out) << csv.str();
    }
    return 0;
}

// --------------------------------------------------------------------- ep-window

struct EpWindowArgs {
    std::string params_file;
    int n = 1;
};

int cmd_ep_window(const EpWindowArgs& args) {
    const PhysicalParams p = load_material_file(args.params_file);
    const auto [eps_lo, eps_hi] = epsilon_window();
    const auto [r_lo, r_hi] = radius_window(p, args.n);
    const double h_c = derive_hc(p);
    std::cout << "h_c = " << format_float(h_c) << " 1/s\n";
    std::cout << "epsilon window (open): (" << format_float(eps_lo) << ", "
              << format_float(eps_hi) << ")\n";
    std::cout << "radius window for n = " << args.n << " (open): ("
              << format_float(r_lo) << ", " << format_float(r_hi) << ") mm\n";
    std::cout << "v_ep at the window edges: " << format_float(h_c * r_lo / std::abs(args.n))
              << " and " << format_float(h_c * r_hi / std::abs(args.n)) << " mm/s\n";
    return 0;
}

// ------------------------------------------------------------------- closed-form

struct ClosedFormArgs {
    std::string params_file;
    double radius_mm = 21.0;
    int n = 1;
    double amplitude = 1.0;
    int points = 512;
    std::string out;
};

int cmd_closed_form(const ClosedFormArgs& args) {
    const PhysicalParams p = load_material_file(args.params_file);
    if (args.points < 16) throw ConfigError("--points must be at least 16");

    ClosedFormSolution lit =
        make_closed_form(p, args.radius_mm, args.n, args.amplitude, F2Variant::PaperLiteral);
    ClosedFormSolution ode =
        make_closed_form(p, args.radius_mm, args.n, args.amplitude, F2Variant::OdeConsistent);

    std::ostringstream csv;
    csv << "x_mm,f1_K,f2_paper_literal_K,f2_ode_consistent_K\n";
    const double L = 2.0 * std::numbers::pi * args.radius_mm;
    for (int j = 0; j < args.points; ++j) {
        const double x = L * static_cast<double>(j) / static_cast<double>(args.points);
        csv << format_float(x) << ',' << format_float(f1_profile(x, lit)) << ','
            << format_float(f2_profile(x, lit)) << ',' << format_float(f2_profile(x, ode))
            << '\n';
    }
    if (args.out.empty()) {
        std::cout << csv.str();
    } else {
        open_output(args.out) << csv.str();
    }

    const double phi_form = phi_closed_form(lit.epsilon);
    const double phi_lit = phi_periodicity_root(lit.epsilon, F2Variant::PaperLiteral, args.n);
    const double phi_ode = phi_periodicity_root(ode.epsilon, F2Variant::OdeConsistent, args.n);
    const SeamGap gap_lit = f2_seam_gap(lit);
    const SeamGap gap_ode = f2_seam_gap(ode);
    const auto [eps_lo, eps_hi] = epsilon_window();
    const auto [r_lo, r_hi] = radius_window(p, args.n);

    std::cout << "{\n";
    std::cout << "  \"epsilon\": " << format_float(lit.epsilon) << ",\n";
    std::cout << "  \"lambda\": " << format_float(lit.lambda) << ",\n";
    std::cout << "  \"alpha\": " << format_float(lit.alpha) << ",\n";
    std::cout << "  \"phi_closed_form_rad\": " << format_float(phi_form) << ",\n";
    std::cout << "  \"phi_root_paper_literal_rad\": " << format_float(phi_lit) << ",\n";
    std::cout << "  \"phi_root_ode_consistent_rad\": " << format_float(phi_ode) << ",\n";
    std::cout << "  \"seam_value_gap_paper_literal_K\": " << format_float(gap_lit.value_gap)
              << ",\n";
    std::cout << "  \"seam_derivative_gap_paper_literal_K_per_mm\": "
              << format_float(gap_lit.derivative_gap) << ",\n";
    std::cout << "  \"seam_value_gap_ode_consistent_K\": " << format_float(gap_ode.value_gap)
              << ",\n";
    std::cout << "  \"seam_derivative_gap_ode_consistent_K_per_mm\": "
              << format_float(gap_ode.derivative_gap) << ",\n";
    std::cout << "  \"epsilon_window\": [" << format_float(eps_lo) << ", "
              << format_float(eps_hi) << "],\n";
    std::cout << "  \"radius_window_mm\": [" << format_float(r_lo) << ", "
              << format_float(r_hi) << "],\n";
    std::cout << "  \"in_rabi_window\": "
              << (rabi_window_conditions(lit.epsilon) ? "true" : "false") << "\n";
    std::cout << "}\n";
    return 0;
}

// ---------------------------------------------------------------------- simulate

struct ScenarioFlags {
    std::string config_file;
    std::optional<double> radius_mm, v, v1, v2, dv, amplitude, T0, t_end;
    std::optional<int> n, grid, snap_every, snapshots;
    std::optional<std::string> ic, ic_file, solver, out_dir;
};

Scenario scenario_from_flags(const ScenarioFlags& flags) {
    KeyValues kv = parse_key_value_file(flags.config_file);
    auto set = [&kv](const std::string& key, const std::string& value) { kv[key] = value; };
    auto set_num = [&set](const std::string& key, double v) {
        set(key, format_float(v));
    };
    if (flags.v || flags.v1 || flags.v2 || flags.dv) {
        kv.erase("v_mm_per_s");
        kv.erase("v1_mm_per_s");
        kv.erase("v2_mm_per_s");
        kv.erase("dv_mm_per_s");
    }
    if (flags.radius_mm) set_num("R_mm", *flags.radius_mm);
    if (flags.n) set("n", std::to_string(*flags.n));
    if (flags.v) set_num("v_mm_per_s", *flags.v);
    if (flags.v1) set_num("v1_mm_per_s", *flags.v1);
    if (flags.v2) set_num("v2_mm_per_s", *flags.v2);
    if (flags.dv) set_num("dv_mm_per_s", *flags.dv);
    if (flags.amplitude) set_num("amplitude_K", *flags.amplitude);
    if (flags.T0) set_num("T0_K", *flags.T0);
    if (flags.t_end) set_num("t_end_s", *flags.t_end);
    if (flags.grid) set("grid", std::to_string(*flags.grid));
    if (flags.snap_every) set("snap_every_steps", std::to_string(*flags.snap_every));
    if (flags.snapshots) set("snapshot_count", std::to_string(*flags.snapshots));
    if (flags.ic) set("ic", *flags.ic);
    if (flags.ic_file) set("ic_file", *flags.ic_file);
    if (flags.solver) set("solver", *flags.solver);
    if (flags.out_dir) set("out_dir", *flags.out_dir);
    return scenario_from_config(kv);
}

std::vector<FieldState> run_scenario(const Scenario& sc, SolverKind solver) {
    const FieldState init = initial_state(sc);
    if (!(sc.t_end > init.time)) {
        throw ConfigError("t_end_s = " + format_float(sc.t_end) +
                          " does not exceed the initial time stamp " +
                          format_float(init.time));
    }
    std::vector<FieldState> frames;
    if (solver == SolverKind::Spectral) {
        const int count = sc.snapshot_count;
        frames.reserve(static_cast<std::size_t>(count) + 1);
        for (int k = 0; k <= count; ++k) {
            const double t = init.time + (sc.t_end - init.time) * static_cast<double>(k) /
                                             static_cast<double>(count);
            frames.push_back(evolve(init, t, sc.v1, sc.v2, sc.params));
        }
    } else {
        StepPolicy policy;
        policy.snapshot_every = sc.snap_every_steps;
        simulate(init, sc.t_end, policy, sc.v1, sc.v2, sc.params,
                 [&frames](const FieldState& f) { frames.push_back(f); });
    }
    return frames;
}

void write_frames(const std::string& out_dir, const std::vector<FieldState>& frames) {
    const std::string resolved = resolve_path(out_dir);
    fs::create_directories(resolved);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "snap_%06zu.csv", i);
        write_snapshot_file((fs::path(resolved) / name).string(), frames[i]);
    }
}

int cmd_simulate(const ScenarioFlags& flags) {
    const Scenario sc = scenario_from_flags(flags);
    const std::string out_dir = sc.out_dir.empty() ? "run-out" : sc.out_dir;

    const auto frames = run_scenario(sc, sc.solver);
    write_frames(out_dir, frames);

    const ObservableReport report = analyze_trajectory(frames, sc.n);
    {
        auto csv = open_output((fs::path(out_dir) / "observables.csv").string());
        write_observables_csv(csv, report, true);
    }
    std::cout << "solver: " << solver_name(sc.solver) << ", ic: " << ic_name(sc.ic)
              << ", grid: " << sc.grid_n << ", v1 = " << format_float(sc.v1)
              << " mm/s, v2 = " << format_float(sc.v2) << " mm/s\n";
    std::cout << "wrote " << frames.size() << " snapshots to " << resolve_path(out_dir)
              << "\n";
    write_observables_text(std::cout, report);
    return 0;
}

// ----------------------------------------------------------------------- compare

int cmd_compare(const ScenarioFlags& flags, const std::string& out) {
    Scenario sc = scenario_from_flags(flags);
    const FieldState final_spectral = run_scenario(sc, SolverKind::Spectral).back();
    const FieldState final_fd = run_scenario(sc, SolverKind::Fd).back();
    const FieldNorms norms = compare(final_spectral, final_fd);

    std::ostringstream csv;
    csv << "t_s,l2_abs_T1,linf_abs_T1,l2_rel_T1,linf_rel_T1,"
           "l2_abs_T2,linf_abs_T2,l2_rel_T2,linf_rel_T2\n";
    csv << format_float(final_spectral.time);
    for (int r = 0; r < 2; ++r) {
        csv << ',' << format_float(norms.l2_abs[r]) << ',' << format_float(norms.linf_abs[r])
            << ',' << format_float(norms.l2_rel[r]) << ',' << format_float(norms.linf_rel[r]);
    }
    csv << '\n';
    if (out.empty()) {
        std::cout << csv.str();
    } else {
        open_output(out) << csv.str();
    }
    std::cout << "max relative Linf (spectral vs fd): " << format_float(norms.max_rel_linf())
              << "\n";
    return 0;
}

// ------------------------------------------------------------------ detune-sweep

struct DetuneArgs {
    ScenarioFlags flags;
    double dv_min = 0.0;
    double dv_max = 0.4;
    int steps = 5;
    std::string out;
};

/// Sweeps the detuning; each run starts from the rigidly-translating pair
/// T1 = A cos, T2 = -A sin and reports the measured drift and decay.
int cmd_detune_sweep(const DetuneArgs& args) {
    if (args.steps < 2) throw ConfigError("--steps must be at least 2");
    Scenario sc = scenario_from_flags(args.flags);
    const double ep = v_ep(derive_hc(sc.params), static_cast<double>(sc.n) / sc.geom.R);

    std::ostringstream csv;
    csv << "dv_mm_per_s,v1_mm_per_s,v2_mm_per_s,drift_mm_per_s,drift_residual,"
           "decay_rate_per_s,decay_residual\n";
    for (int i = 0; i < args.steps; ++i) {
        const double dv = args.dv_min + (args.dv_max - args.dv_min) *
                                            static_cast<double>(i) /
                                            static_cast<double>(args.steps - 1);
        Scenario run = sc;
        run.v1 = ep + dv;
        run.v2 = ep - dv;
        const Grid grid(run.grid_n, run.geom);
        const FieldState init = cos_negsin_field(grid, run.n, run.amplitude, run.T0);

        std::vector<FieldState> frames;
        for (int k = 0; k <= run.snapshot_count; ++k) {
            const double t =
                run.t_end * static_cast<double>(k) / static_cast<double>(run.snapshot_count);
            frames.push_back(evolve(init, t, run.v1, run.v2, run.params));
        }
        std::vector<double> ts(frames.size()), mags(frames.size());
        for (std::size_t k = 0; k < frames.size(); ++k) {
            ts[k] = frames[k].time;
            mags[k] = std::abs(mode_amplitudes(frames[k], run.n).first);
        }
        const DecayFit decay = fit_decay(ts, mags);
        const DriftFit drift = drift_velocity(frames, run.n);
        csv << format_float(dv) << ',' << format_float(run.v1) << ','
            << format_float(run.v2) << ',' << format_float(drift.velocity) << ','
            << format_float(drift.residual_rms) << ',' << format_float(decay.rate) << ','
            << format_float(decay.residual_rms) << '\n';
    }
    if (args.out.empty()) {
        std::cout << csv.str();
    } else {
        open_output(args.out) << csv.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled counter-rotating thermal ring toolkit"};
    app.require_subcommand(1);

    SpectrumArgs spectrum_args;
    auto* sp = app.add_subcommand("spectrum", "Eigenfrequency sweep over tangential speed");
    sp->add_option("--params", spectrum_args.params_file, "material key=value file")->required();
    sp->add_option("--radius-mm", spectrum_args.radius_mm, "inner radius [mm]");
    sp->add_option("--n", spectrum_args.n, "mode number (nonzero)");
    sp->add_option("--v-min", spectrum_args.v_min, "sweep start [mm/s]");
    sp->add_option("--v-max", spectrum_args.v_max, "sweep end [mm/s]");
    sp->add_option("--steps", spectrum_args.steps, "sample count (>= 2)");
    sp->add_option("--out", spectrum_args.out, "CSV path (default stdout)");

    EpWindowArgs ep_args;
    auto* ew = app.add_subcommand("ep-window", "Oscillation windows in epsilon and radius");
    ew->add_option("--params", ep_args.params_file, "material key=value file")->required();
    ew->add_option("--n", ep_args.n, "mode number (nonzero)");

    ClosedFormArgs cf_args;
    auto* cf = app.add_subcommand("closed-form", "Coalescence-point temperature profiles");
    cf->add_option("--params", cf_args.params_file, "material key=value file")->required();
    cf->add_option("--radius-mm", cf_args.radius_mm, "inner radius [mm]");
    cf->add_option("--n", cf_args.n, "mode number (nonzero)");
    cf->add_option("--amplitude", cf_args.amplitude, "profile amplitude [K]");
    cf->add_option("--points", cf_args.points, "samples around the ring");
    cf->add_option("--out", cf_args.out, "CSV path (default stdout)");

    auto add_scenario_flags = [](CLI::App* cmd, ScenarioFlags& flags) {
        cmd->add_option("--config", flags.config_file, "scenario key=value file")->required();
        cmd->add_option("--radius-mm", flags.radius_mm, "override R_mm");
        cmd->add_option("--n", flags.n, "override mode number");
        cmd->add_option("--v", flags.v, "symmetric counter-rotation speed [mm/s]");
        cmd->add_option("--v1", flags.v1, "ring 1 speed [mm/s]");
        cmd->add_option("--v2", flags.v2, "ring 2 speed [mm/s]");
        cmd->add_option("--dv", flags.dv, "detuning about the coalescence speed [mm/s]");
        cmd->add_option("--ic", flags.ic, "cos-cos | cos-sin | file");
        cmd->add_option("--ic-file", flags.ic_file, "snapshot CSV initial condition");
        cmd->add_option("--amplitude", flags.amplitude, "override amplitude_K");
        cmd->add_option("--t0", flags.T0, "override T0_K");
        cmd->add_option("--solver", flags.solver, "spectral | fd");
        cmd->add_option("--grid", flags.grid, "override grid sample count");
        cmd->add_option("--t-end", flags.t_end, "override t_end_s");
        cmd->add_option("--snap-every", flags.snap_every, "fd snapshot cadence [steps]");
        cmd->add_option("--snapshots", flags.snapshots, "spectral snapshot count");
        cmd->add_option("--out-dir", flags.out_dir, "output directory");
    };

    ScenarioFlags sim_flags;
    auto* sim = app.add_subcommand("simulate", "Run one scenario and its diagnostics");
    add_scenario_flags(sim, sim_flags);

    ScenarioFlags cmp_flags;
    std::string cmp_out;
    auto* cmp = app.add_subcommand("compare", "Run both solvers and report agreement norms");
    add_scenario_flags(cmp, cmp_flags);
    cmp->add_option("--out", cmp_out, "norms CSV path (default stdout)");

    DetuneArgs det_args;
    auto* det = app.add_subcommand("detune-sweep", "Drift and decay versus detuning");
    add_scenario_flags(det, det_args.flags);
    det->add_option("--dv-min", det_args.dv_min, "sweep start [mm/s]");
    det->add_option("--dv-max", det_args.dv_max, "sweep end [mm/s]");
    det->add_option("--steps", det_args.steps, "sample count (>= 2)");
    det->add_option("--out", det_args.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
        if (sp->parsed()) return cmd_spectrum(spectrum_args);
        if (ew->parsed()) return cmd_ep_window(ep_args);
        if (cf->parsed()) return cmd_closed_form(cf_args);
        if (sim->parsed()) return cmd_simulate(sim_flags);
        if (cmp->parsed()) return cmd_compare(cmp_flags, cmp_out);
        if (det->parsed()) return cmd_detune_sweep(det_args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParamDomainError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

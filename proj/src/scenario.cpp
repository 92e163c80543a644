#include "aptring/scenario.hpp"

#include <cmath>

namespace aptring {

const std::map<std::string, int>& material_keys() {
    static const std::map<std::string, int> keys = {
        {"D", 0}, {"rho", 0}, {"c", 0}, {"k_i", 0}, {"d", 0}, {"b", 0},
    };
    return keys;
}

const std::map<std::string, int>& scenario_keys() {
    static const std::map<std::string, int> keys = [] {
        std::map<std::string, int> k = material_keys();
        for (const char* name :
             {"R_mm", "delta_r_mm", "n", "v_mm_per_s", "v1_mm_per_s", "v2_mm_per_s",
              "dv_mm_per_s", "ic", "ic_file", "amplitude_K", "T0_K", "solver", "grid",
              "t_end_s", "snap_every_steps", "snapshot_count", "out_dir"}) {
            k[name] = 0;
        }
        return k;
    }();
    return keys;
}

Scenario scenario_from_config(const KeyValues& kv) {
    validate_keys(kv, scenario_keys(), "scenario config");

    Scenario sc;
    sc.params = physical_params_from_config(kv);
    sc.geom = RingGeometry{get_double(kv, "R_mm"), get_double_or(kv, "delta_r_mm", 0.0)};
    sc.geom.validate();
    sc.n = static_cast<int>(get_long(kv, "n"));
    if (sc.n == 0) throw ConfigError("mode number n must be nonzero");

    const bool has_v = kv.count("v_mm_per_s") > 0;
    const bool has_v12 = kv.count("v1_mm_per_s") > 0 || kv.count("v2_mm_per_s") > 0;
    const bool has_dv = kv.count("dv_mm_per_s") > 0;
    if (static_cast<int>(has_v) + static_cast<int>(has_v12) + static_cast<int>(has_dv) != 1) {
        throw ConfigError(
            "exactly one speed form required: v_mm_per_s | v1_mm_per_s+v2_mm_per_s | dv_mm_per_s");
    }
    if (has_v) {
        sc.speed_form = SpeedForm::Symmetric;
        sc.v1 = sc.v2 = get_double(kv, "v_mm_per_s");
    } else if (has_v12) {
        if (!kv.count("v1_mm_per_s") || !kv.count("v2_mm_per_s")) {
            throw ConfigError("v1_mm_per_s and v2_mm_per_s must be given together");
        }
        sc.speed_form = SpeedForm::Independent;
        sc.v1 = get_double(kv, "v1_mm_per_s");
        sc.v2 = get_double(kv, "v2_mm_per_s");
    } else {
        sc.speed_form = SpeedForm::Detuned;
        sc.dv = get_double(kv, "dv_mm_per_s");
        const double ep = v_ep(derive_hc(sc.params),
                               static_cast<double>(sc.n) / sc.geom.R);
        sc.v1 = ep + sc.dv;
        sc.v2 = ep - sc.dv;
    }

    const std::string ic = kv.count("ic") ? kv.at("ic") : "cos-cos";
    if (ic == "cos-cos") {
        sc.ic = IcKind::CosCos;
    } else if (ic == "cos-sin") {
        sc.ic = IcKind::CosSin;
    } else if (ic == "file") {
        sc.ic = IcKind::File;
        if (!kv.count("ic_file")) throw ConfigError("ic = file requires ic_file");
        sc.ic_file = kv.at("ic_file");
    } else {
        throw ConfigError("ic must be one of cos-cos | cos-sin | file, got `" + ic + "`");
    }

    sc.amplitude = get_double_or(kv, "amplitude_K", 1.0);
    sc.T0 = get_double_or(kv, "T0_K", 0.0);

    const std::string solver = kv.count("solver") ? kv.at("solver") : "spectral";
    if (solver == "spectral") {
        sc.solver = SolverKind::Spectral;
    } else if (solver == "fd") {
        sc.solver = SolverKind::Fd;
    } else {
        throw ConfigError("solver must be spectral | fd, got `" + solver + "`");
    }

    sc.grid_n = static_cast<int>(get_long(kv, "grid"));
    sc.t_end = get_double(kv, "t_end_s");
    if (!(sc.t_end > 0.0)) throw ConfigError("t_end_s must be positive");
    sc.snap_every_steps =
        kv.count("snap_every_steps") ? static_cast<int>(get_long(kv, "snap_every_steps")) : 200;
    sc.snapshot_count =
        kv.count("snapshot_count") ? static_cast<int>(get_long(kv, "snapshot_count")) : 50;
    if (sc.snap_every_steps < 1) throw ConfigError("snap_every_steps must be >= 1");
    if (sc.snapshot_count < 1) throw ConfigError("snapshot_count must be >= 1");
    if (kv.count("out_dir")) sc.out_dir = kv.at("out_dir");
    return sc;
}

FieldState initial_state(const Scenario& sc) {
    Grid grid(sc.grid_n, sc.geom);
    switch (sc.ic) {
        case IcKind::CosCos:
            return cos_cos_field(grid, sc.n, sc.amplitude, sc.T0);
        case IcKind::CosSin:
            return cos_sin_field(grid, sc.n, sc.amplitude, sc.T0);
        case IcKind::File: {
            FieldState f = read_snapshot_file(sc.ic_file, sc.geom);
            if (f.grid.N != sc.grid_n) {
                throw ConfigError("ic_file grid (" + std::to_string(f.grid.N) +
                                  ") does not match configured grid (" +
                                  std::to_string(sc.grid_n) + ")");
            }
            return f;
        }
    }
    throw ConfigError("unreachable ic kind");
}

const char* solver_name(SolverKind kind) {
    return kind == SolverKind::Spectral ? "spectral" : "fd";
}

const char* ic_name(IcKind kind) {
    switch (kind) {
        case IcKind::CosCos: return "cos-cos";
        case IcKind::CosSin: return "cos-sin";
        case IcKind::File: return "file";
    }
    return "?";
}

} // namespace aptring

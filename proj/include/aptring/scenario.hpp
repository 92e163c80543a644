#ifndef APTRING_SCENARIO_HPP
#define APTRING_SCENARIO_HPP

#include <string>

#include "aptring/field.hpp"
#include "aptring/params.hpp"

namespace aptring {

enum class SolverKind { Spectral, Fd };
enum class IcKind { CosCos, CosSin, File };
enum class SpeedForm { Symmetric, Independent, Detuned };

/// One fully-resolved simulation description. Speeds follow the
/// counter-rotation convention: ring 1 moves at +v1 along +x, ring 2 at -v2.
struct Scenario {
    PhysicalParams params;
    RingGeometry geom;
    int n = 1;
    SpeedForm speed_form = SpeedForm::Symmetric;
    double v1 = 0.0;  // [mm/s]
    double v2 = 0.0;  // [mm/s]
    double dv = 0.0;  // detuning when speed_form == Detuned [mm/s]
    IcKind ic = IcKind::CosCos;
    std::string ic_file;
    double amplitude = 1.0;  // [K]
    double T0 = 0.0;         // [K]
    SolverKind solver = SolverKind::Spectral;
    int grid_n = 256;
    double t_end = 10.0;          // [s]
    int snap_every_steps = 200;   // fd cadence
    int snapshot_count = 50;      // spectral frame count (excluding t = 0)
    std::string out_dir;
};

/// Material keys accepted by a standalone parameter file (SI units).
const std::map<std::string, int>& material_keys();

/// Full scenario key set: material keys plus scenario keys.
const std::map<std::string, int>& scenario_keys();

/// Builds a Scenario from parsed key/values. Exactly one speed specification
/// form must be present: v_mm_per_s | v1_mm_per_s+v2_mm_per_s | dv_mm_per_s.
Scenario scenario_from_config(const KeyValues& kv);

/// Materializes the configured initial condition on the scenario grid.
FieldState initial_state(const Scenario& sc);

const char* solver_name(SolverKind kind);
const char* ic_name(IcKind kind);

} // namespace aptring

#endif

#ifndef APTRING_DIAGNOSTICS_HPP
#define APTRING_DIAGNOSTICS_HPP

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aptring/field.hpp"

namespace aptring {

/// Magnitudes below this are treated as noise by the trajectory estimators.
inline constexpr double kNoiseFloor = 1e-14;

/// Least-squares exponential decay rate of a positive magnitude series.
/// Every estimate carries its fit residual.
struct DecayFit {
    double rate;          // [1/s]
    double residual_rms;  // RMS of log-magnitude about the fit
};

DecayFit fit_decay(std::span<const double> t, std::span<const double> magnitude);

/// Drift speed from the unwrapped phase of one Fourier mode regressed
/// against time: speed = -R * (dphase/dt) / n.
struct DriftFit {
    double velocity;      // [mm/s]
    double residual_rms;  // RMS of unwrapped phase about the fit [rad]
};

DriftFit drift_velocity(std::span<const double> t,
                        std::span<const std::complex<double>> mode_amp, int n,
                        double R);

/// Ring-1 fundamental is the tracked mode.
DriftFit drift_velocity(const std::vector<FieldState>& frames, int n);

/// Complex amplitudes of mode n for both rings (single-mode projection,
/// 1/N-normalized like decompose).
std::pair<std::complex<double>, std::complex<double>> mode_amplitudes(
    const FieldState& state, int n);

/// Separation of the two dominant spatial-frequency peaks of a profile
/// sampled uniformly over [0, z_span), in angular per-z units. Peaks are
/// Hann-windowed and refined by log-parabolic interpolation. Returns nullopt
/// when no second peak stands above the window's leakage floor.
std::optional<double> beat_wavenumber(std::span<const double> profile, double z_span);

/// Ring-1 beat separation in z-units (z = n x / R over the ring).
std::optional<double> beat_wavenumber(const FieldState& state, int n);

/// Angle of ring 2's fundamental relative to ring 1's, in (-pi, pi].
/// Positive lag means ring 2 leads ring 1.
double phase_lag(const FieldState& state, int n);

/// Per-ring agreement norms between two snapshots of the same grid and time.
/// l2 is the RMS over samples; rel norms divide by the larger field's norm.
struct FieldNorms {
    double l2_abs[2];
    double linf_abs[2];
    double l2_rel[2];
    double linf_rel[2];

    double max_rel_linf() const;
};

FieldNorms compare(const FieldState& a, const FieldState& b);

/// All trajectory observables in one pass. Estimators that refuse (noise
/// floor, cadence) leave nullopt and a note.
struct ObservableReport {
    std::size_t frames = 0;
    double t_first = 0.0;
    double t_last = 0.0;
    std::optional<DecayFit> decay;
    std::optional<DriftFit> drift;
    std::optional<double> phase_lag_rad;  // final frame
    std::optional<double> beat_z;         // final frame, z-units
    std::vector<std::string> notes;
};

ObservableReport analyze_trajectory(const std::vector<FieldState>& frames, int n);

/// CSV row emitter; columns documented in docs/observables.md.
void write_observables_csv(std::ostream& out, const ObservableReport& report,
                           bool header);
void write_observables_text(std::ostream& out, const ObservableReport& report);

} // namespace aptring

#endif

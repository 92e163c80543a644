#ifndef APTRING_PROPAGATOR_HPP
#define APTRING_PROPAGATOR_HPP

#include <complex>
#include <vector>

#include "aptring/field.hpp"
#include "aptring/spectrum.hpp"

namespace aptring {

/// Complex per-mode amplitudes of the two rings [K].
struct ModeAmplitude {
    Complex a1;
    Complex a2;
};

/// Diffusion and coupling rates; the pieces of PhysicalParams the evolution
/// actually uses. h_c = 0 describes decoupled rings.
struct TransportRates {
    double D;    // [mm^2/s]
    double h_c;  // [1/s]
};

TransportRates rates_of(const PhysicalParams& p);

/// Discrete spectrum of a FieldState. Amplitudes are stored in transform
/// index order k = 0..N-1; index k carries the signed mode
/// n = k <= N/2 ? k : k - N, covering [-N/2, N/2) for even N.
struct FieldSpectrum {
    Grid grid;
    double time = 0.0;
    double T0 = 0.0;
    std::vector<ModeAmplitude> amps;

    explicit FieldSpectrum(Grid g);
    int mode_of_index(int k) const;
    ModeAmplitude& at_mode(int n);
    const ModeAmplitude& at_mode(int n) const;
};

/// Forward transform, 1/N normalization on analysis. Direct O(N^2) sums;
/// grid sizes are arbitrary and desk-scale.
FieldSpectrum decompose(const FieldState& field);

/// Inverse transform; the imaginary residue of the sums is discarded.
FieldState compose(const FieldSpectrum& spectrum);

/// Switch to the polynomial-in-time propagator when the discriminant of the
/// counter-rotating part is this small relative to h_c^2; closer to the
/// coalescence point the diagonalizing similarity is too ill-conditioned.
inline constexpr double kDefectTol = 1e-8;

/// Exact 2x2 propagator for one mode over dt: rings advect with speeds v1
/// (ring 1, +x) and v2 (ring 2, -x); diagonal advection terms kappa v1 and
/// -kappa v2. Within kDefectTol of the degenerate point the exponential is
/// evaluated as e^{mu t}(Id + N t) with N the nilpotent part.
ModeAmplitude evolve_mode(const ModeAmplitude& amp, int n, double v1, double v2,
                          const TransportRates& rates, const RingGeometry& geom,
                          double dt);
ModeAmplitude evolve_mode(const ModeAmplitude& amp, int n, double v1, double v2,
                          const PhysicalParams& p, const RingGeometry& geom,
                          double dt);

/// decompose -> evolve each mode exactly -> recompose. Exact for the linear
/// constant-coefficient system up to transform round-off.
FieldState evolve(const FieldState& field, double t_end, double v1, double v2,
                  const TransportRates& rates);
FieldState evolve(const FieldState& field, double t_end, double v1, double v2,
                  const PhysicalParams& p);

/// Rigid translation by `shift` mm via per-mode phase factors.
FieldState shift_field(const FieldState& field, double shift);

} // namespace aptring

#endif

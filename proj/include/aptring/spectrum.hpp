#ifndef APTRING_SPECTRUM_HPP
#define APTRING_SPECTRUM_HPP

#include <array>
#include <complex>
#include <vector>

#include "aptring/params.hpp"

namespace aptring {

using Complex = std::complex<double>;
using Mat2 = std::array<std::array<Complex, 2>, 2>;
using Vec2 = std::array<Complex, 2>;

/// Per-mode 2x2 modal matrix of the coupled ring pair, convention
/// d/dt (a1,a2) = -i H (a1,a2), time dependence e^{-i omega t}.
///
/// entries = [ -i(kappa^2 D + h_c) + kappa v,   i h_c
///              i h_c,                          -i(kappa^2 D + h_c) - kappa v ]
struct ModeHamiltonian {
    Mat2 entries;  // [1/s]
    double kappa;  // [1/mm]
    double v;      // tangential speed [mm/s]
};

enum class Phase { Static, Exceptional, Moving };

const char* phase_name(Phase phase);

/// Classification tolerance on |h_c^2 - kappa^2 v^2|, relative to h_c^2.
inline constexpr double kPhaseTol = 1e-10;

struct EigenReport {
    Complex omega_plus;   // -i[(kappa^2 D + h_c) + sqrt(h_c^2 - kappa^2 v^2)]
    Complex omega_minus;  // -i[(kappa^2 D + h_c) - sqrt(h_c^2 - kappa^2 v^2)]
    Vec2 eigvec_plus;     // unit norm
    Vec2 eigvec_minus;    // unit norm
    double discriminant;  // h_c^2 - kappa^2 v^2 [1/s^2]
    Phase phase;
};

ModeHamiltonian build_hamiltonian(double kappa, double v, const PhysicalParams& p);
ModeHamiltonian build_hamiltonian(double kappa, double v, double D, double h_c);

EigenReport eigenfrequencies(const ModeHamiltonian& H);

/// Residual of the anti-PT algebra (sigma_x H sigma_x)^* + H; zero for every
/// well-formed modal matrix.
double apt_residual(const ModeHamiltonian& H);

/// Principal angle [rad] between the two unit eigenvectors; -> 0 at coalescence.
double eigenvector_angle(const EigenReport& report);

/// Locates the eigenvalue-coalescence speed by bisection on the discriminant
/// over [v_lo, v_hi]. The bracket must straddle a sign change.
double find_ep(double kappa, const PhysicalParams& p, double v_lo, double v_hi);

struct SweepPoint {
    double v;  // [mm/s]
    EigenReport report;
};

/// Eigenfrequencies on a uniform speed grid with `steps` >= 2 samples.
std::vector<SweepPoint> sweep_spectrum(double kappa, const PhysicalParams& p,
                                       double v_min, double v_max, int steps);

} // namespace aptring

#endif

#ifndef APTRING_CLOSED_FORM_HPP
#define APTRING_CLOSED_FORM_HPP

#include <span>
#include <utility>

#include "aptring/params.hpp"

namespace aptring {

/// Roots of chi^4 + (2 - a^2) chi^2 + (1 - epsilon^2) = 0 in the chi^2 variable.
///
/// `oscillatory` holds when both roots are real and negative, so that the
/// profile ansatz oscillates instead of growing along the ring:
///   (i)  a^4 - 4a^2 + 4 epsilon^2 > 0
///   (ii) a^2 - 2 + sqrt(a^4 - 4a^2 + 4 epsilon^2) < 0
struct QuarticRoots {
    double chi2_plus;   // NaN when the pair is complex
    double chi2_minus;  // NaN when the pair is complex
    bool real_roots;
    bool oscillatory;
    double chi1;  // sqrt(|chi2_plus|), NaN unless oscillatory
    double chi2;  // sqrt(|chi2_minus|), NaN unless oscillatory
};

QuarticRoots chi_squared(double a, double epsilon);

/// Critical advection group 2(1 - sqrt(1 - epsilon^2)); defined on 0 <= epsilon <= 1.
double a_crit(double epsilon);

/// Oscillation conditions in the self-consistent case a = epsilon:
/// 0 < epsilon < 1 and epsilon < a_crit(epsilon). Strict at both edges.
bool rabi_window_conditions(double epsilon);

/// The open epsilon interval where `rabi_window_conditions` holds: (4/5, 1).
std::pair<double, double> epsilon_window();

/// Brute-force verification of the window: walks epsilon in increments of
/// `step` and returns the first and last grid values satisfying the conditions.
std::pair<double, double> epsilon_window_scan(double step);

/// Radii giving epsilon in the open window for mode n; endpoints map to
/// epsilon = 4/5 and 1 exactly. [mm]
std::pair<double, double> radius_window(const PhysicalParams& p, int n);

/// Exponent choice for the decaying part of the ring-2 profile. The printed
/// closed form and the homogeneous roots of the ring-2 ODE disagree
/// (1/(2 epsilon) vs epsilon/2 in z-units); both are available and reported.
enum class F2Variant { PaperLiteral, OdeConsistent };

const char* variant_name(F2Variant variant);

/// Closed-form temperature profiles at the eigenvector-coalescence speed.
struct ClosedFormSolution {
    double epsilon;
    double lambda;
    double alpha;  // sqrt(1 - (epsilon/2)^2)
    double phi;    // seam phase [rad]
    double A;      // initial amplitude [K]
    double B1;     // cosine amplitude of ring 1 [K]
    double A2;     // decaying-term amplitude of ring 2 [K], = A sec(phi)
    int n;
    double R;      // [mm]
    F2Variant variant;
};

ClosedFormSolution make_closed_form(const PhysicalParams& p, double R, int n,
                                    double A, F2Variant variant);

/// Replace the seam phase, keeping f2(0) = A pinned (A2 tracks sec(phi)).
void set_phase(ClosedFormSolution& sol, double phi);

/// Ring-1 profile A cos(n x / R); periodic over the circumference. [K]
double f1_profile(double x, const ClosedFormSolution& sol);

/// Ring-2 profile A2 e^{-mu z} cos(alpha z + phi) - B1 sin(z), z = n x / R. [K]
double f2_profile(double x, const ClosedFormSolution& sol);

/// Decay constant of the variant's exponential, per unit z.
double f2_exponent_z(const ClosedFormSolution& sol);

/// Seam phase from the printed arctan[cot - csc * exp] closed form (the
/// exponent matches the PaperLiteral variant). Singular where sin(2 pi alpha)
/// vanishes.
double phi_closed_form(double epsilon);
double phi_closed_form(const PhysicalParams& p, double R);

/// Seam phase solved numerically so that f2(0) = f2(2 pi R) for the given
/// exponent variant; bisection on (-pi/2, pi/2).
double phi_periodicity_root(double epsilon, F2Variant variant, int n = 1);

/// Value and first-derivative mismatch of f2 across the ring seam.
struct SeamGap {
    double value_gap;       // |f2(0) - f2(2 pi R)| [K]
    double derivative_gap;  // |f2'(0) - f2'(2 pi R)| [K/mm]
};

SeamGap f2_seam_gap(const ClosedFormSolution& sol);

// ---------------------------------------------------------------------------
// Residual oracles on uniform periodic grids (4th-order central differences).
// Samples live at z_j = j * z_span / N. `seam_margin` grid points at each end
// are excluded from the norms, for profiles whose decaying part is not
// ring-periodic. Norms are relative to the largest local term magnitude.
// ---------------------------------------------------------------------------

struct CoupledResidual {
    double rel_linf_r1;  // f1'' - a f1' + f1 + epsilon f2
    double rel_linf_r2;  // f2'' + a f2' + f2 + epsilon f1
};

/// Requires N >= 32 samples.
CoupledResidual coupled_profile_residual(std::span<const double> f1,
                                         std::span<const double> f2,
                                         double epsilon, double a,
                                         double z_span, int seam_margin = 0);

/// Relative L-inf residual of f'''' + (2 - a^2) f'' + (1 - epsilon^2) f = 0.
/// The fourth derivative uses a 9-point central stencil; resolve it over a
/// multi-period window (h around 0.02-0.05) to stay under round-off.
double quartic_profile_residual(std::span<const double> f, double epsilon,
                                double a, double z_span, int seam_margin = 0);

/// Relative L-inf residual of f2'' + epsilon f2' + f2 = -epsilon B1 cos(z).
double ring2_profile_residual(std::span<const double> f2, double epsilon,
                              double B1, double z_span, int seam_margin = 0);

} // namespace aptring

#endif

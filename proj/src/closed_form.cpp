#include "aptring/closed_form.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace aptring {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

} // namespace

QuarticRoots chi_squared(double a, double epsilon) {
    const double a2 = a * a;
    const double disc = a2 * a2 - 4.0 * a2 + 4.0 * epsilon * epsilon;
    QuarticRoots roots{kNaN, kNaN, false, false, kNaN, kNaN};
    if (disc < 0.0) return roots;
    roots.real_roots = true;
    const double s = std::sqrt(disc);
    roots.chi2_plus = 0.5 * (a2 - 2.0 + s);
    roots.chi2_minus = 0.5 * (a2 - 2.0 - s);
    roots.oscillatory = disc > 0.0 && (a2 - 2.0 + s) < 0.0;
    if (roots.oscillatory) {
        roots.chi1 = std::sqrt(-roots.chi2_plus);
        roots.chi2 = std::sqrt(-roots.chi2_minus);
    }
    return roots;
}

double a_crit(double epsilon) {
    if (epsilon < 0.0 || epsilon > 1.0) {
        throw ParamDomainError("a_crit needs epsilon in [0, 1], got " +
                               std::to_string(epsilon));
    }
    return 2.0 * (1.0 - std::sqrt(1.0 - epsilon * epsilon));
}

bool rabi_window_conditions(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) return false;
    return epsilon < a_crit(epsilon);
}

std::pair<double, double> epsilon_window() { return {0.8, 1.0}; }

std::pair<double, double> epsilon_window_scan(double step) {
    if (!(step > 0.0) || step > 0.1) {
        throw ParamDomainError("scan step must lie in (0, 0.1]");
    }
    double first = kNaN, last = kNaN;
    const long count = static_cast<long>(std::ceil(1.2 / step));
    for (long k = 1; k <= count; ++k) {
        const double eps = static_cast<double>(k) * step;
        if (rabi_window_conditions(eps)) {
            if (std::isnan(first)) first = eps;
            last = eps;
        }
    }
    if (std::isnan(first)) {
        throw NumericalError("scan found no epsilon satisfying the oscillation conditions");
    }
    return {first, last};
}

std::pair<double, double> radius_window(const PhysicalParams& p, int n) {
    if (n == 0) throw ParamDomainError("mode number n must be nonzero");
    const double h_c = derive_hc(p);
    const double scale = std::abs(static_cast<double>(n));
    return {scale * std::sqrt(4.0 * p.D / (5.0 * h_c)), scale * std::sqrt(p.D / h_c)};
}

const char* variant_name(F2Variant variant) {
    return variant == F2Variant::PaperLiteral ? "paper_literal" : "ode_consistent";
}

double phi_closed_form(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 2.0)) {
        throw ParamDomainError("seam phase needs epsilon in (0, 2)");
    }
    const double alpha = std::sqrt(1.0 - 0.25 * epsilon * epsilon);
    const double s = std::sin(2.0 * kPi * alpha);
    if (std::abs(s) < 1e-12) {
        throw NumericalError("sin(2 pi alpha) vanishes; seam phase is singular");
    }
    const double c = std::cos(2.0 * kPi * alpha);
    return std::atan(c / s - std::exp(kPi / epsilon) / s);
}

double phi_closed_form(const PhysicalParams& p, double R) {
    return phi_closed_form(epsilon_of(p, R, 1));
}

double phi_periodicity_root(double epsilon, F2Variant variant, int n) {
    if (!(epsilon > 0.0) || !(epsilon < 2.0)) {
        throw ParamDomainError("seam phase needs epsilon in (0, 2)");
    }
    if (n == 0) throw ParamDomainError("mode number n must be nonzero");
    const double alpha = std::sqrt(1.0 - 0.25 * epsilon * epsilon);
    const double mu = variant == F2Variant::PaperLiteral ? 0.5 / epsilon : 0.5 * epsilon;
    const double span = 2.0 * kPi * std::abs(static_cast<double>(n));

    // Periodicity across the seam: cos(phi) = e^{-mu*span} cos(alpha*span + phi).
    auto gap = [&](double phi) {
        return std::exp(-mu * span) * std::cos(alpha * span + phi) - std::cos(phi);
    };
    double lo = -0.5 * kPi + 1e-9, hi = 0.5 * kPi - 1e-9;
    double g_lo = gap(lo), g_hi = gap(hi);
    if (g_lo * g_hi > 0.0) {
        throw NumericalError("no seam-phase sign change in (-pi/2, pi/2)");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = gap(mid);
        if (g_lo * g_mid <= 0.0) {
            hi = mid;
            g_hi = g_mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
        if (hi - lo < 1e-16) break;
    }
    return 0.5 * (lo + hi);
}

ClosedFormSolution make_closed_form(const PhysicalParams& p, double R, int n,
                                    double A, F2Variant variant) {
    const double eps = epsilon_of(p, R, n);
    if (!(eps < 2.0)) {
        throw ParamDomainError("epsilon = " + std::to_string(eps) +
                               " >= 2: no real alpha, closed form undefined");
    }
    ClosedFormSolution sol;
    sol.epsilon = eps;
    sol.lambda = 1.0 + 1.0 / eps;
    sol.alpha = std::sqrt(1.0 - 0.25 * eps * eps);
    sol.A = A;
    sol.B1 = A;
    sol.n = n;
    sol.R = R;
    sol.variant = variant;
    set_phase(sol, phi_closed_form(eps));
    return sol;
}

void set_phase(ClosedFormSolution& sol, double phi) {
    const double c = std::cos(phi);
    if (std::abs(c) < 1e-12) {
        throw NumericalError("cos(phi) vanishes; sec(phi) amplitude undefined");
    }
    sol.phi = phi;
    sol.A2 = sol.A / c;
}

double f1_profile(double x, const ClosedFormSolution& sol) {
    return sol.B1 * std::cos(static_cast<double>(sol.n) * x / sol.R);
}

double f2_exponent_z(const ClosedFormSolution& sol) {
    return sol.variant == F2Variant::PaperLiteral ? 0.5 / sol.epsilon
                                                  : 0.5 * sol.epsilon;
}

double f2_profile(double x, const ClosedFormSolution& sol) {
    const double z = static_cast<double>(sol.n) * x / sol.R;
    const double mu = f2_exponent_z(sol);
    return sol.A2 * std::exp(-mu * z) * std::cos(sol.alpha * z + sol.phi) -
           sol.B1 * std::sin(z);
}

SeamGap f2_seam_gap(const ClosedFormSolution& sol) {
    const double L = 2.0 * kPi * sol.R;
    const double h = 1e-6 * sol.R;
    auto deriv = [&](double x) {
        // 4th-order one-sided-free central stencil, small h in x
        return (-f2_profile(x + 2 * h, sol) + 8 * f2_profile(x + h, sol) -
                8 * f2_profile(x - h, sol) + f2_profile(x - 2 * h, sol)) /
               (12 * h);
    };
    return SeamGap{std::abs(f2_profile(0.0, sol) - f2_profile(L, sol)),
                   std::abs(deriv(0.0) - deriv(L))};
}

namespace {

struct Derivatives {
    std::vector<double> d1, d2;
};

// 4th-order central first and second differences on a periodic grid.
Derivatives periodic_derivatives(std::span<const double> f, double h) {
    const long N = static_cast<long>(f.size());
    Derivatives out;
    out.d1.resize(N);
    out.d2.resize(N);
    auto at = [&](long j) { return f[static_cast<std::size_t>((j % N + N) % N)]; };
    for (long j = 0; j < N; ++j) {
        out.d1[j] = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) /
                    (12.0 * h);
        out.d2[j] = (-at(j + 2) + 16.0 * at(j + 1) - 30.0 * at(j) +
                     16.0 * at(j - 1) - at(j - 2)) /
                    (12.0 * h * h);
    }
    return out;
}

// 7-point central second derivative, for the quartic operator's wide grids.
std::vector<double> periodic_d2_wide(std::span<const double> f, double h) {
    const long N = static_cast<long>(f.size());
    std::vector<double> out(N);
    auto at = [&](long j) { return f[static_cast<std::size_t>((j % N + N) % N)]; };
    const double w0 = -49.0 / 18.0, w1 = 3.0 / 2.0, w2 = -3.0 / 20.0, w3 = 1.0 / 90.0;
    const double inv_h2 = 1.0 / (h * h);
    for (long j = 0; j < N; ++j) {
        out[j] = (w3 * (at(j - 3) + at(j + 3)) + w2 * (at(j - 2) + at(j + 2)) +
                  w1 * (at(j - 1) + at(j + 1)) + w0 * at(j)) *
                 inv_h2;
    }
    return out;
}

// 9-point central fourth derivative. Shorter stencils leave a ~1e-6 round-off
// floor at h ~ 2 pi / 1024 (the 1/h^4 division amplifies sample rounding),
// which a 1e-8 residual check cannot tolerate.
std::vector<double> periodic_d4(std::span<const double> f, double h) {
    const long N = static_cast<long>(f.size());
    std::vector<double> out(N);
    auto at = [&](long j) { return f[static_cast<std::size_t>((j % N + N) % N)]; };
    const double w0 = 91.0 / 8.0, w1 = -122.0 / 15.0, w2 = 169.0 / 60.0,
                 w3 = -2.0 / 5.0, w4 = 7.0 / 240.0;
    const double inv_h4 = 1.0 / (h * h * h * h);
    for (long j = 0; j < N; ++j) {
        out[j] = (w4 * (at(j - 4) + at(j + 4)) + w3 * (at(j - 3) + at(j + 3)) +
                  w2 * (at(j - 2) + at(j + 2)) + w1 * (at(j - 1) + at(j + 1)) +
                  w0 * at(j)) *
                 inv_h4;
    }
    return out;
}

} // namespace

CoupledResidual coupled_profile_residual(std::span<const double> f1,
                                         std::span<const double> f2,
                                         double epsilon, double a,
                                         double z_span, int seam_margin) {
    const long N = static_cast<long>(f1.size());
    if (N < 32) throw ParamDomainError("residual grid too coarse: need N >= 32");
    if (f2.size() != f1.size()) throw ParamDomainError("f1/f2 sample counts differ");
    const double h = z_span / static_cast<double>(N);
    const Derivatives g1 = periodic_derivatives(f1, h);
    const Derivatives g2 = periodic_derivatives(f2, h);

    double r1 = 0.0, r2 = 0.0, scale = 0.0;
    for (long j = seam_margin; j < N - seam_margin; ++j) {
        const double t11 = g1.d2[j], t12 = -a * g1.d1[j], t13 = f1[j], t14 = epsilon * f2[j];
        const double t21 = g2.d2[j], t22 = a * g2.d1[j], t23 = f2[j], t24 = epsilon * f1[j];
        r1 = std::max(r1, std::abs(t11 + t12 + t13 + t14));
        r2 = std::max(r2, std::abs(t21 + t22 + t23 + t24));
        scale = std::max({scale, std::abs(t11) + std::abs(t12) + std::abs(t13) + std::abs(t14),
                          std::abs(t21) + std::abs(t22) + std::abs(t23) + std::abs(t24)});
    }
    if (scale == 0.0) return {0.0, 0.0};
    return {r1 / scale, r2 / scale};
}

double quartic_profile_residual(std::span<const double> f, double epsilon,
                                double a, double z_span, int seam_margin) {
    const long N = static_cast<long>(f.size());
    if (N < 32) throw ParamDomainError("residual grid too coarse: need N >= 32");
    const double h = z_span / static_cast<double>(N);
    const std::vector<double> d2 = periodic_d2_wide(f, h);
    const std::vector<double> d4 = periodic_d4(f, h);

    const double c2 = 2.0 - a * a;
    const double c0 = 1.0 - epsilon * epsilon;
    double r = 0.0, scale = 0.0;
    for (long j = seam_margin; j < N - seam_margin; ++j) {
        const double t1 = d4[j], t2 = c2 * d2[j], t3 = c0 * f[j];
        r = std::max(r, std::abs(t1 + t2 + t3));
        scale = std::max(scale, std::abs(t1) + std::abs(t2) + std::abs(t3));
    }
    return scale == 0.0 ? 0.0 : r / scale;
}

double ring2_profile_residual(std::span<const double> f2, double epsilon,
                              double B1, double z_span, int seam_margin) {
    const long N = static_cast<long>(f2.size());
    if (N < 32) throw ParamDomainError("residual grid too coarse: need N >= 32");
    const double h = z_span / static_cast<double>(N);
    const Derivatives g = periodic_derivatives(f2, h);

    double r = 0.0, scale = 0.0;
    for (long j = seam_margin; j < N - seam_margin; ++j) {
        const double z = static_cast<double>(j) * h;
        const double t1 = g.d2[j], t2 = epsilon * g.d1[j], t3 = f2[j];
        const double t4 = epsilon * B1 * std::cos(z);
        r = std::max(r, std::abs(t1 + t2 + t3 + t4));
        scale = std::max(scale, std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4));
    }
    return scale == 0.0 ? 0.0 : r / scale;
}

} // namespace aptring

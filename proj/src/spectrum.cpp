#include "aptring/spectrum.hpp"

#include <cmath>

namespace aptring {

namespace {

constexpr Complex kI{0.0, 1.0};

double norm2(const Vec2& u) {
    return std::sqrt(std::norm(u[0]) + std::norm(u[1]));
}

Vec2 normalized(Vec2 u) {
    const double n = norm2(u);
    u[0] /= n;
    u[1] /= n;
    return u;
}

} // namespace

const char* phase_name(Phase phase) {
    switch (phase) {
        case Phase::Static: return "static";
        case Phase::Exceptional: return "exceptional";
        case Phase::Moving: return "moving";
    }
    return "unknown";
}

ModeHamiltonian build_hamiltonian(double kappa, double v, double D, double h_c) {
    const double decay = kappa * kappa * D + h_c;
    ModeHamiltonian H;
    H.kappa = kappa;
    H.v = v;
    H.entries[0][0] = -kI * decay + kappa * v;
    H.entries[0][1] = kI * h_c;
    H.entries[1][0] = kI * h_c;
    H.entries[1][1] = -kI * decay - kappa * v;
    return H;
}

ModeHamiltonian build_hamiltonian(double kappa, double v, const PhysicalParams& p) {
    return build_hamiltonian(kappa, v, p.D, derive_hc(p));
}

EigenReport eigenfrequencies(const ModeHamiltonian& H) {
    // Everything is recovered from the entries so the report stays consistent
    // with the matrix it was asked about.
    const double h_c = H.entries[0][1].imag();
    const double decay = -0.5 * (H.entries[0][0].imag() + H.entries[1][1].imag());
    const double kv = 0.5 * (H.entries[0][0].real() - H.entries[1][1].real());

    EigenReport rep;
    rep.discriminant = h_c * h_c - kv * kv;
    const Complex root = std::sqrt(Complex(rep.discriminant, 0.0));
    rep.omega_plus = -kI * (decay + root);
    rep.omega_minus = -kI * (decay - root);

    // Traceless part B = H + i*decay*Id has eigenpairs (beta, (B12, beta - B11));
    // B12 = i h_c is nonzero for any valid coupling, so the form never degenerates.
    const Complex beta_plus = rep.omega_plus + kI * decay;
    const Complex beta_minus = rep.omega_minus + kI * decay;
    rep.eigvec_plus = normalized({kI * h_c, beta_plus - kv});
    rep.eigvec_minus = normalized({kI * h_c, beta_minus - kv});

    const double tol = kPhaseTol * h_c * h_c;
    if (std::abs(rep.discriminant) <= tol) {
        rep.phase = Phase::Exceptional;
    } else if (rep.discriminant > 0.0) {
        rep.phase = Phase::Static;
    } else {
        rep.phase = Phase::Moving;
    }
    return rep;
}

double apt_residual(const ModeHamiltonian& H) {
    // (sigma_x H sigma_x)^* + H, entrywise conjugation, Frobenius norm.
    double acc = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const Complex swapped = H.entries[1 - r][1 - c];
            acc += std::norm(std::conj(swapped) + H.entries[r][c]);
        }
    }
    return std::sqrt(acc);
}

double eigenvector_angle(const EigenReport& report) {
    Complex dot = 0.0;
    for (int i = 0; i < 2; ++i) {
        dot += std::conj(report.eigvec_plus[i]) * report.eigvec_minus[i];
    }
    const double c = std::min(1.0, std::abs(dot));
    return std::acos(c);
}

double find_ep(double kappa, const PhysicalParams& p, double v_lo, double v_hi) {
    if (kappa == 0.0) {
        throw ParamDomainError("the uniform mode (kappa = 0) has no eigenvector coalescence point");
    }
    if (!(v_hi > v_lo)) {
        throw NumericalError("degenerate speed bracket [" + std::to_string(v_lo) + ", " +
                             std::to_string(v_hi) + "]");
    }
    const double h_c = derive_hc(p);
    auto disc = [&](double v) { return h_c * h_c - kappa * kappa * v * v; };

    double lo = v_lo, hi = v_hi;
    double f_lo = disc(lo), f_hi = disc(hi);
    const double target = 1e-12 * h_c * h_c;
    if (std::abs(f_lo) < target) return lo;
    if (std::abs(f_hi) < target) return hi;
    if (f_lo * f_hi > 0.0) {
        throw NumericalError("speed bracket [" + std::to_string(v_lo) + ", " +
                             std::to_string(v_hi) + "] does not straddle a discriminant sign change");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = disc(mid);
        if (std::abs(f_mid) < target || hi - lo < 1e-15 * std::max(1.0, std::abs(mid))) {
            return mid;
        }
        if (f_lo * f_mid <= 0.0) {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<SweepPoint> sweep_spectrum(double kappa, const PhysicalParams& p,
                                       double v_min, double v_max, int steps) {
    if (steps < 2) throw ParamDomainError("sweep needs at least 2 steps");
    if (!(v_max > v_min)) throw ParamDomainError("sweep needs v_max > v_min");
    std::vector<SweepPoint> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double v = v_min + (v_max - v_min) * static_cast<double>(i) /
                                     static_cast<double>(steps - 1);
        out.push_back({v, eigenfrequencies(build_hamiltonian(kappa, v, p))});
    }
    return out;
}

} // namespace aptring

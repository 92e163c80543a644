#include "aptring/propagator.hpp"

#include <cmath>
#include <numbers>

namespace aptring {

namespace {

constexpr Complex kI{0.0, 1.0};

/// e^{2 pi i m / N} for m = 0..N-1; indexing products (k*j) mod N through this
/// table keeps the transform pair exactly inverse up to round-off.
std::vector<Complex> twiddle_table(int N) {
    std::vector<Complex> w(static_cast<std::size_t>(N));
    for (int m = 0; m < N; ++m) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(m) /
                           static_cast<double>(N);
        w[static_cast<std::size_t>(m)] = Complex(std::cos(ang), std::sin(ang));
    }
    return w;
}

struct ModePropagator {
    Complex p11, p12, p21, p22;
};

ModePropagator mode_propagator(double kappa, double v1, double v2,
                               const TransportRates& rates, double dt,
                               bool drop_advection) {
    const double v_bar = drop_advection ? 0.0 : 0.5 * (v1 + v2);
    const double v_drift = drop_advection ? 0.0 : 0.5 * (v1 - v2);
    const double h_c = rates.h_c;
    const double disc = h_c * h_c - kappa * kappa * v_bar * v_bar;

    const Complex scalar = std::exp(Complex(-(kappa * kappa * rates.D + h_c) * dt,
                                            -kappa * v_drift * dt));

    // Traceless generator C = -i B, B the counter-rotating part; C^2 = disc * Id.
    const Complex c11(0.0, -kappa * v_bar);
    const Complex c12(h_c, 0.0);

    Complex ch, sh_t;  // cosh(w) and sinh(w)/w * dt, w = sqrt(disc) dt
    if (std::abs(disc) <= kDefectTol * h_c * h_c) {
        // Defective within tolerance: e^{C dt} = Id + C dt exactly at the
        // degenerate point, where C is nilpotent.
        ch = 1.0;
        sh_t = dt;
    } else {
        const Complex w = std::sqrt(Complex(disc, 0.0)) * dt;
        ch = std::cosh(w);
        if (std::abs(w) < 1e-4) {
            const Complex w2 = w * w;
            sh_t = (1.0 + w2 / 6.0 + w2 * w2 / 120.0) * dt;
        } else {
            sh_t = std::sinh(w) / w * dt;
        }
    }

    ModePropagator P;
    P.p11 = scalar * (ch + sh_t * c11);
    P.p12 = scalar * (sh_t * c12);
    P.p21 = P.p12;
    P.p22 = scalar * (ch - sh_t * c11);
    return P;
}

} // namespace

TransportRates rates_of(const PhysicalParams& p) { return {p.D, derive_hc(p)}; }

FieldSpectrum::FieldSpectrum(Grid g)
    : grid(g), amps(static_cast<std::size_t>(g.N), ModeAmplitude{0.0, 0.0}) {}

int FieldSpectrum::mode_of_index(int k) const {
    return k <= grid.N / 2 ? k : k - grid.N;
}

ModeAmplitude& FieldSpectrum::at_mode(int n) {
    const int k = n >= 0 ? n : n + grid.N;
    return amps[static_cast<std::size_t>(k)];
}

const ModeAmplitude& FieldSpectrum::at_mode(int n) const {
    const int k = n >= 0 ? n : n + grid.N;
    return amps[static_cast<std::size_t>(k)];
}

FieldSpectrum decompose(const FieldState& field) {
    field.validate();
    const int N = field.grid.N;
    const std::vector<Complex> w = twiddle_table(N);
    FieldSpectrum spec(field.grid);
    spec.time = field.time;
    spec.T0 = field.T0;
    for (int k = 0; k < N; ++k) {
        Complex s1 = 0.0, s2 = 0.0;
        for (int j = 0; j < N; ++j) {
            const int m = static_cast<int>((static_cast<long>(k) * j) % N);
            const Complex ph = std::conj(w[static_cast<std::size_t>(m)]);
            s1 += field.T1[static_cast<std::size_t>(j)] * ph;
            s2 += field.T2[static_cast<std::size_t>(j)] * ph;
        }
        spec.amps[static_cast<std::size_t>(k)] = {s1 / static_cast<double>(N),
                                                  s2 / static_cast<double>(N)};
    }
    return spec;
}

FieldState compose(const FieldSpectrum& spectrum) {
    const int N = spectrum.grid.N;
    const std::vector<Complex> w = twiddle_table(N);
    FieldState field(spectrum.grid);
    field.time = spectrum.time;
    field.T0 = spectrum.T0;
    for (int j = 0; j < N; ++j) {
        Complex s1 = 0.0, s2 = 0.0;
        for (int k = 0; k < N; ++k) {
            const int m = static_cast<int>((static_cast<long>(k) * j) % N);
            const Complex ph = w[static_cast<std::size_t>(m)];
            s1 += spectrum.amps[static_cast<std::size_t>(k)].a1 * ph;
            s2 += spectrum.amps[static_cast<std::size_t>(k)].a2 * ph;
        }
        field.T1[static_cast<std::size_t>(j)] = s1.real();
        field.T2[static_cast<std::size_t>(j)] = s2.real();
    }
    return field;
}

ModeAmplitude evolve_mode(const ModeAmplitude& amp, int n, double v1, double v2,
                          const TransportRates& rates, const RingGeometry& geom,
                          double dt) {
    if (dt < 0.0) throw ParamDomainError("dt must be non-negative");
    const double kappa = static_cast<double>(n) / geom.R;
    const ModePropagator P = mode_propagator(kappa, v1, v2, rates, dt, false);
    return {P.p11 * amp.a1 + P.p12 * amp.a2, P.p21 * amp.a1 + P.p22 * amp.a2};
}

ModeAmplitude evolve_mode(const ModeAmplitude& amp, int n, double v1, double v2,
                          const PhysicalParams& p, const RingGeometry& geom,
                          double dt) {
    return evolve_mode(amp, n, v1, v2, rates_of(p), geom, dt);
}

FieldState evolve(const FieldState& field, double t_end, double v1, double v2,
                  const TransportRates& rates) {
    if (t_end < field.time) {
        throw ParamDomainError("t_end precedes the field time stamp");
    }
    const double dt = t_end - field.time;
    FieldSpectrum spec = decompose(field);
    const int N = field.grid.N;
    for (int k = 0; k < N; ++k) {
        const int n = spec.mode_of_index(k);
        const double kappa = static_cast<double>(n) / field.grid.geom.R;
        // The grid cannot carry the quadrature partner of the highest even-N
        // harmonic, so its advection is dropped; diffusion and coupling stay.
        const bool nyquist = (N % 2 == 0) && (std::abs(n) == N / 2);
        const ModePropagator P = mode_propagator(kappa, v1, v2, rates, dt, nyquist);
        ModeAmplitude& a = spec.amps[static_cast<std::size_t>(k)];
        a = {P.p11 * a.a1 + P.p12 * a.a2, P.p21 * a.a1 + P.p22 * a.a2};
    }
    spec.time = t_end;
    return compose(spec);
}

FieldState evolve(const FieldState& field, double t_end, double v1, double v2,
                  const PhysicalParams& p) {
    return evolve(field, t_end, v1, v2, rates_of(p));
}

FieldState shift_field(const FieldState& field, double shift) {
    FieldSpectrum spec = decompose(field);
    const int N = field.grid.N;
    for (int k = 0; k < N; ++k) {
        const int n = spec.mode_of_index(k);
        const double kappa = static_cast<double>(n) / field.grid.geom.R;
        Complex factor;
        if ((N % 2 == 0) && (std::abs(n) == N / 2)) {
            factor = std::cos(kappa * shift);
        } else {
            factor = std::exp(-kI * kappa * shift);
        }
        ModeAmplitude& a = spec.amps[static_cast<std::size_t>(k)];
        a.a1 *= factor;
        a.a2 *= factor;
    }
    return compose(spec);
}

} // namespace aptring

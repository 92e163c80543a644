#include "aptring/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace aptring {

namespace {

constexpr double kPi = std::numbers::pi;

struct LineFit {
    double slope;
    double intercept;
    double residual_rms;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw NumericalError("degenerate abscissae in least-squares fit");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

} // namespace

DecayFit fit_decay(std::span<const double> t, std::span<const double> magnitude) {
    if (t.size() != magnitude.size()) {
        throw ParamDomainError("time and magnitude series differ in length");
    }
    if (t.size() < 10) {
        throw NumericalError("decay fit needs at least 10 samples, got " +
                             std::to_string(t.size()));
    }
    std::vector<double> logm(magnitude.size());
    for (std::size_t i = 0; i < magnitude.size(); ++i) {
        if (!(magnitude[i] > kNoiseFloor)) {
            throw NumericalError("decay fit input at the noise floor (sample " +
                                 std::to_string(i) + ")");
        }
        logm[i] = std::log(magnitude[i]);
    }
    const LineFit fit = least_squares(t, logm);
    return {-fit.slope, fit.residual_rms};
}

DriftFit drift_velocity(std::span<const double> t,
                        std::span<const std::complex<double>> mode_amp, int n,
                        double R) {
    if (n == 0) throw ParamDomainError("drift needs a nonzero mode");
    if (t.size() != mode_amp.size()) {
        throw ParamDomainError("time and amplitude series differ in length");
    }
    if (t.size() < 3) throw NumericalError("drift fit needs at least 3 frames");

    std::vector<double> phase(t.size());
    double prev = std::arg(mode_amp[0]);
    double offset = 0.0;
    phase[0] = prev;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(std::abs(mode_amp[i]) > kNoiseFloor)) {
            throw NumericalError("tracked mode below the noise floor at frame " +
                                 std::to_string(i));
        }
        if (i == 0) continue;
        const double raw = std::arg(mode_amp[i]);
        double delta = raw - prev;
        while (delta > kPi) delta -= 2.0 * kPi;
        while (delta < -kPi) delta += 2.0 * kPi;
        // A per-frame change this close to the branch cut is ambiguous.
        if (std::abs(delta) > 0.9 * kPi) {
            throw NumericalError("phase step exceeds the unwrap margin between frames " +
                                 std::to_string(i - 1) + " and " + std::to_string(i) +
                                 "; snapshot cadence too coarse");
        }
        offset += delta - (raw - prev);
        phase[i] = raw + offset;
        prev = raw;
    }
    const LineFit fit = least_squares(t, phase);
    return {-R * fit.slope / static_cast<double>(n), fit.residual_rms};
}

std::pair<std::complex<double>, std::complex<double>> mode_amplitudes(
    const FieldState& state, int n) {
    const int N = state.grid.N;
    std::complex<double> a1 = 0.0, a2 = 0.0;
    for (int j = 0; j < N; ++j) {
        const double ang = -2.0 * kPi * static_cast<double>(n) *
                           static_cast<double>(j) / static_cast<double>(N);
        const std::complex<double> ph(std::cos(ang), std::sin(ang));
        a1 += state.T1[static_cast<std::size_t>(j)] * ph;
        a2 += state.T2[static_cast<std::size_t>(j)] * ph;
    }
    return {a1 / static_cast<double>(N), a2 / static_cast<double>(N)};
}

DriftFit drift_velocity(const std::vector<FieldState>& frames, int n) {
    if (frames.size() < 3) throw NumericalError("drift fit needs at least 3 frames");
    std::vector<double> t(frames.size());
    std::vector<std::complex<double>> amp(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        t[i] = frames[i].time;
        amp[i] = mode_amplitudes(frames[i], n).first;
    }
    return drift_velocity(t, amp, n, frames.front().grid.geom.R);
}

std::optional<double> beat_wavenumber(std::span<const double> profile, double z_span) {
    const std::size_t N = profile.size();
    if (N < 32) throw ParamDomainError("beat estimate needs at least 32 samples");
    if (!(z_span > 0.0)) throw ParamDomainError("z_span must be positive");

    double mean = 0.0;
    for (double v : profile) mean += v;
    mean /= static_cast<double>(N);

    // Hann window, then magnitude spectrum up to the folding frequency.
    const std::size_t half = N / 2;
    std::vector<double> mag(half + 1, 0.0);
    for (std::size_t k = 0; k <= half; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            const double w =
                0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(j) /
                                     static_cast<double>(N));
            const double ang = -2.0 * kPi * static_cast<double>(k) *
                               static_cast<double>(j) / static_cast<double>(N);
            acc += (profile[j] - mean) * w *
                   std::complex<double>(std::cos(ang), std::sin(ang));
        }
        mag[k] = std::abs(acc);
    }

    struct Peak {
        double height;
        std::size_t bin;
    };
    std::vector<Peak> peaks;
    for (std::size_t k = 1; k + 1 <= half; ++k) {
        if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1]) peaks.push_back({mag[k], k});
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.height > b.height; });
    if (peaks.size() < 2) return std::nullopt;
    // Hann leakage sidelobes sit near -31 dB; a genuine second component must
    // stand clearly above them.
    if (peaks[1].height < 0.05 * peaks[0].height) return std::nullopt;

    auto refine = [&](std::size_t k) {
        if (k == 0 || k >= half) return static_cast<double>(k);
        const double la = std::log(std::max(mag[k - 1], 1e-300));
        const double lb = std::log(std::max(mag[k], 1e-300));
        const double lc = std::log(std::max(mag[k + 1], 1e-300));
        const double denom = la - 2.0 * lb + lc;
        if (denom == 0.0) return static_cast<double>(k);
        return static_cast<double>(k) + 0.5 * (la - lc) / denom;
    };
    const double k1 = refine(peaks[0].bin);
    const double k2 = refine(peaks[1].bin);
    return std::abs(k2 - k1) * 2.0 * kPi / z_span;
}

std::optional<double> beat_wavenumber(const FieldState& state, int n) {
    if (n == 0) throw ParamDomainError("beat estimate needs a nonzero mode");
    // In z = n x / R the ring spans 2 pi n.
    return beat_wavenumber(std::span<const double>(state.T1),
                           2.0 * kPi * std::abs(static_cast<double>(n)));
}

double phase_lag(const FieldState& state, int n) {
    const auto [a1, a2] = mode_amplitudes(state, n);
    if (!(std::abs(a1) > kNoiseFloor) || !(std::abs(a2) > kNoiseFloor)) {
        throw NumericalError("phase lag undefined: a fundamental amplitude is at the noise floor");
    }
    return std::arg(a2 / a1);
}

double FieldNorms::max_rel_linf() const { return std::max(linf_rel[0], linf_rel[1]); }

FieldNorms compare(const FieldState& a, const FieldState& b) {
    if (!(a.grid == b.grid)) throw ParamDomainError("compare: grid mismatch");
    if (std::abs(a.time - b.time) > 1e-9 * std::max(1.0, std::abs(a.time))) {
        throw ParamDomainError("compare: time stamps differ");
    }
    FieldNorms out{};
    const std::vector<double>* fa[2] = {&a.T1, &a.T2};
    const std::vector<double>* fb[2] = {&b.T1, &b.T2};
    for (int r = 0; r < 2; ++r) {
        double ss = 0.0, mx = 0.0, ssa = 0.0, ssb = 0.0, mxa = 0.0, mxb = 0.0;
        const std::size_t N = fa[r]->size();
        for (std::size_t j = 0; j < N; ++j) {
            const double d = (*fa[r])[j] - (*fb[r])[j];
            ss += d * d;
            mx = std::max(mx, std::abs(d));
            ssa += (*fa[r])[j] * (*fa[r])[j];
            ssb += (*fb[r])[j] * (*fb[r])[j];
            mxa = std::max(mxa, std::abs((*fa[r])[j]));
            mxb = std::max(mxb, std::abs((*fb[r])[j]));
        }
        out.l2_abs[r] = std::sqrt(ss / static_cast<double>(N));
        out.linf_abs[r] = mx;
        const double l2_ref = std::sqrt(std::max(ssa, ssb) / static_cast<double>(N));
        const double linf_ref = std::max(mxa, mxb);
        out.l2_rel[r] = l2_ref > 0.0 ? out.l2_abs[r] / l2_ref : 0.0;
        out.linf_rel[r] = linf_ref > 0.0 ? out.linf_abs[r] / linf_ref : 0.0;
    }
    return out;
}

ObservableReport analyze_trajectory(const std::vector<FieldState>& frames, int n) {
    if (frames.empty()) throw ParamDomainError("empty trajectory");
    ObservableReport rep;
    rep.frames = frames.size();
    rep.t_first = frames.front().time;
    rep.t_last = frames.back().time;

    std::vector<double> t(frames.size()), mags(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        t[i] = frames[i].time;
        mags[i] = std::abs(mode_amplitudes(frames[i], n).first);
    }
    try {
        rep.decay = fit_decay(t, mags);
    } catch (const NumericalError& e) {
        rep.notes.push_back(std::string("decay: ") + e.what());
    }
    try {
        rep.drift = drift_velocity(frames, n);
    } catch (const NumericalError& e) {
        rep.notes.push_back(std::string("drift: ") + e.what());
    }
    try {
        rep.phase_lag_rad = phase_lag(frames.back(), n);
    } catch (const NumericalError& e) {
        rep.notes.push_back(std::string("phase_lag: ") + e.what());
    }
    rep.beat_z = beat_wavenumber(frames.back(), n);
    return rep;
}

namespace {

std::string cell(const std::optional<double>& v) {
    return v ? format_float(*v) : std::string();
}

} // namespace

void write_observables_csv(std::ostream& out, const ObservableReport& report,
                           bool header) {
    if (header) {
        out << "frames,t_first_s,t_last_s,decay_rate_per_s,decay_residual,"
               "drift_mm_per_s,drift_residual,phase_lag_rad,beat_z\n";
    }
    out << report.frames << ',' << format_float(report.t_first) << ','
        << format_float(report.t_last) << ','
        << (report.decay ? format_float(report.decay->rate) : std::string()) << ','
        << (report.decay ? format_float(report.decay->residual_rms) : std::string())
        << ','
        << (report.drift ? format_float(report.drift->velocity) : std::string()) << ','
        << (report.drift ? format_float(report.drift->residual_rms) : std::string())
        << ',' << cell(report.phase_lag_rad) << ',' << cell(report.beat_z) << '\n';
}

void write_observables_text(std::ostream& out, const ObservableReport& report) {
    out << "trajectory: " << report.frames << " frames, t = ["
        << format_float(report.t_first) << ", " << format_float(report.t_last)
        << "] s\n";
    if (report.decay) {
        out << "  decay rate      : " << format_float(report.decay->rate)
            << " 1/s (fit residual " << format_float(report.decay->residual_rms)
            << ")\n";
    }
    if (report.drift) {
        out << "  drift velocity  : " << format_float(report.drift->velocity)
            << " mm/s (fit residual " << format_float(report.drift->residual_rms)
            << ")\n";
    }
    if (report.phase_lag_rad) {
        out << "  phase lag (2 vs 1): " << format_float(*report.phase_lag_rad)
            << " rad (positive = ring 2 leads)\n";
    }
    if (report.beat_z) {
        out << "  spatial beat    : " << format_float(*report.beat_z) << " per z\n";
    } else {
        out << "  spatial beat    : absent (no second spectral peak)\n";
    }
    for (const auto& note : report.notes) out << "  note: " << note << '\n';
}

} // namespace aptring

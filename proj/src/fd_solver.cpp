#include "aptring/fd_solver.hpp"

#include <algorithm>
#include <cmath>

namespace aptring {

namespace {

double max_abs(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    for (double v : b) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

void rhs(const FieldState& state, double v1, double v2, const TransportRates& rates,
         std::vector<double>& dT1, std::vector<double>& dT2) {
    const int N = state.grid.N;
    const double dx = state.grid.dx();
    const double inv_dx2 = 1.0 / (dx * dx);
    const double inv_2dx = 1.0 / (2.0 * dx);
    dT1.resize(static_cast<std::size_t>(N));
    dT2.resize(static_cast<std::size_t>(N));
    const auto& T1 = state.T1;
    const auto& T2 = state.T2;
    for (int j = 0; j < N; ++j) {
        const int jm = j == 0 ? N - 1 : j - 1;
        const int jp = j == N - 1 ? 0 : j + 1;
        const double lap1 = (T1[jp] - 2.0 * T1[j] + T1[jm]) * inv_dx2;
        const double grad1 = (T1[jp] - T1[jm]) * inv_2dx;
        const double lap2 = (T2[jp] - 2.0 * T2[j] + T2[jm]) * inv_dx2;
        const double grad2 = (T2[jp] - T2[jm]) * inv_2dx;
        dT1[j] = rates.D * lap1 - v1 * grad1 + rates.h_c * (T2[j] - T1[j]);
        dT2[j] = rates.D * lap2 + v2 * grad2 + rates.h_c * (T1[j] - T2[j]);
    }
}

void rhs(const FieldState& state, double v1, double v2, const PhysicalParams& p,
         std::vector<double>& dT1, std::vector<double>& dT2) {
    rhs(state, v1, v2, rates_of(p), dT1, dT2);
}

FieldState step_rk4(const FieldState& state, double dt, double v1, double v2,
                    const TransportRates& rates) {
    if (dt < 0.0) throw ParamDomainError("dt must be non-negative");
    const int N = state.grid.N;
    const std::size_t n = static_cast<std::size_t>(N);

    std::vector<double> k1a(n), k1b(n), k2a(n), k2b(n), k3a(n), k3b(n), k4a(n), k4b(n);
    FieldState stage(state.grid);
    stage.T0 = state.T0;

    rhs(state, v1, v2, rates, k1a, k1b);
    for (std::size_t j = 0; j < n; ++j) {
        stage.T1[j] = state.T1[j] + 0.5 * dt * k1a[j];
        stage.T2[j] = state.T2[j] + 0.5 * dt * k1b[j];
    }
    rhs(stage, v1, v2, rates, k2a, k2b);
    for (std::size_t j = 0; j < n; ++j) {
        stage.T1[j] = state.T1[j] + 0.5 * dt * k2a[j];
        stage.T2[j] = state.T2[j] + 0.5 * dt * k2b[j];
    }
    rhs(stage, v1, v2, rates, k3a, k3b);
    for (std::size_t j = 0; j < n; ++j) {
        stage.T1[j] = state.T1[j] + dt * k3a[j];
        stage.T2[j] = state.T2[j] + dt * k3b[j];
    }
    rhs(stage, v1, v2, rates, k4a, k4b);

    FieldState next(state.grid);
    next.time = state.time + dt;
    next.T0 = state.T0;
    for (std::size_t j = 0; j < n; ++j) {
        next.T1[j] = state.T1[j] +
                     dt / 6.0 * (k1a[j] + 2.0 * k2a[j] + 2.0 * k3a[j] + k4a[j]);
        next.T2[j] = state.T2[j] +
                     dt / 6.0 * (k1b[j] + 2.0 * k2b[j] + 2.0 * k3b[j] + k4b[j]);
    }

    const double before = max_abs(state.T1, state.T2);
    const double after = max_abs(next.T1, next.T2);
    if (after > 10.0 * std::max(before, 1e-300)) {
        throw NumericalError("time step unstable: field grew more than 10x in one step (dt = " +
                             std::to_string(dt) + ")");
    }
    return next;
}

FieldState step_rk4(const FieldState& state, double dt, double v1, double v2,
                    const PhysicalParams& p) {
    return step_rk4(state, dt, v1, v2, rates_of(p));
}

double stable_dt(const Grid& grid, double v1, double v2, const TransportRates& rates,
                 double safety) {
    const double dx = grid.dx();
    double dt = dx * dx / (2.0 * rates.D);
    const double v_max = std::max(std::abs(v1), std::abs(v2));
    if (v_max > 0.0) dt = std::min(dt, dx / v_max);
    return safety * dt;
}

FieldState simulate(const FieldState& state0, double t_end, const StepPolicy& policy,
                    double v1, double v2, const TransportRates& rates,
                    const SnapshotSink& sink) {
    if (!(t_end > state0.time)) {
        throw ParamDomainError("t_end must exceed the initial time stamp");
    }
    state0.validate();
    const double dt = stable_dt(state0.grid, v1, v2, rates, policy.safety);

    FieldState state = state0;
    if (sink) sink(state);
    long step = 0;
    while (state.time < t_end - 1e-12 * t_end) {
        const double h = std::min(dt, t_end - state.time);
        state = step_rk4(state, h, v1, v2, rates);
        ++step;
        if (sink && policy.snapshot_every > 0 && step % policy.snapshot_every == 0 &&
            state.time < t_end - 1e-12 * t_end) {
            sink(state);
        }
    }
    state.time = t_end;
    if (sink) sink(state);
    return state;
}

FieldState simulate(const FieldState& state0, double t_end, const StepPolicy& policy,
                    double v1, double v2, const PhysicalParams& p,
                    const SnapshotSink& sink) {
    return simulate(state0, t_end, policy, v1, v2, rates_of(p), sink);
}

} // namespace aptring

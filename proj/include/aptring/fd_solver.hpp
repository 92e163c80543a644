#ifndef APTRING_FD_SOLVER_HPP
#define APTRING_FD_SOLVER_HPP

#include <functional>

#include "aptring/field.hpp"
#include "aptring/propagator.hpp"

namespace aptring {

/// Time derivatives of both rings under diffusion, advection, and coupling.
/// Second-order central differences for both derivatives on the periodic
/// stencil. Ring 1 moves at +v1, ring 2 at -v2 along +x.
void rhs(const FieldState& state, double v1, double v2, const TransportRates& rates,
         std::vector<double>& dT1, std::vector<double>& dT2);
void rhs(const FieldState& state, double v1, double v2, const PhysicalParams& p,
         std::vector<double>& dT1, std::vector<double>& dT2);

/// One classical four-stage explicit step. Throws NumericalError when the
/// field magnitude grows by more than 10x in a single step.
FieldState step_rk4(const FieldState& state, double dt, double v1, double v2,
                    const TransportRates& rates);
FieldState step_rk4(const FieldState& state, double dt, double v1, double v2,
                    const PhysicalParams& p);

struct StepPolicy {
    double safety = 0.4;      // multiplies min(dx^2/(2D), dx/max|v|)
    int snapshot_every = 0;   // emit every k steps; 0 = finals only
};

/// dt = safety * min(dx^2 / (2 D), dx / max(|v1|, |v2|)).
double stable_dt(const Grid& grid, double v1, double v2, const TransportRates& rates,
                 double safety);

using SnapshotSink = std::function<void(const FieldState&)>;

/// Steps from state0 to t_end. The sink receives the initial state, every
/// snapshot_every-th step, and the final state.
FieldState simulate(const FieldState& state0, double t_end, const StepPolicy& policy,
                    double v1, double v2, const TransportRates& rates,
                    const SnapshotSink& sink = {});
FieldState simulate(const FieldState& state0, double t_end, const StepPolicy& policy,
                    double v1, double v2, const PhysicalParams& p,
                    const SnapshotSink& sink = {});

} // namespace aptring

#endif

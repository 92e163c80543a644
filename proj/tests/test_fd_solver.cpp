#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aptring/diagnostics.hpp"
#include "aptring/fd_solver.hpp"
#include "aptring/propagator.hpp"

using namespace aptring;

namespace {

PhysicalParams reference_params() {
    return PhysicalParams::from_si(1e-4, 1000.0, 1000.0, 1.0, 1e-3, 5e-3);
}

double rel_linf_vs(const FieldState& a, const FieldState& b) {
    double scale = 0.0, err = 0.0;
    for (std::size_t j = 0; j < a.T1.size(); ++j) {
        scale = std::max({scale, std::abs(b.T1[j]), std::abs(b.T2[j])});
        err = std::max({err, std::abs(a.T1[j] - b.T1[j]), std::abs(a.T2[j] - b.T2[j])});
    }
    return err / scale;
}

} // namespace

TEST_CASE("right-hand side") {
    const PhysicalParams p = reference_params();
    const RingGeometry geom{21.0, 0.0};

    SUBCASE("uniform fields are stationary") {
        const Grid grid(64, geom);
        FieldState f(grid);
        f.T1.assign(f.T1.size(), 4.0);
        f.T2.assign(f.T2.size(), 4.0);
        std::vector<double> d1, d2;
        rhs(f, 4.2, 4.2, p, d1, d2);
        for (std::size_t j = 0; j < d1.size(); ++j) {
            CHECK(std::abs(d1[j]) <= 1e-12);
            CHECK(std::abs(d2[j]) <= 1e-12);
        }
    }
    SUBCASE("single harmonic against the analytic derivative") {
        const double h_c = derive_hc(p);
        for (int N : {256, 512}) {
            const Grid grid(N, geom);
            FieldState f = cos_cos_field(grid, 1, 1.0);
            f.T2.assign(f.T2.size(), 0.0);
            std::vector<double> d1, d2;
            rhs(f, 0.0, 0.0, p, d1, d2);
            const double dx = grid.dx();
            double err1 = 0.0, err2 = 0.0;
            for (int j = 0; j < N; ++j) {
                const double c = std::cos(grid.x(j) / 21.0);
                const double want1 = -(p.D / (21.0 * 21.0)) * c - h_c * c;
                const double want2 = h_c * c;
                err1 = std::max(err1, std::abs(d1[j] - want1));
                err2 = std::max(err2, std::abs(d2[j] - want2));
            }
            // Second-order spatial truncation.
            const double bound = 2.0 * (p.D / (21.0 * 21.0)) * dx * dx;
            CHECK(err1 <= bound);
            CHECK(err2 <= 1e-12);
        }
    }
    SUBCASE("swap symmetry") {
        const Grid grid(64, geom);
        FieldState f(grid);
        for (int j = 0; j < grid.N; ++j) {
            f.T1[j] = std::cos(grid.x(j) / 21.0) + 0.3 * std::sin(3.0 * grid.x(j) / 21.0);
            f.T2[j] = std::sin(grid.x(j) / 21.0) - 0.2 * std::cos(2.0 * grid.x(j) / 21.0);
        }
        FieldState swapped(grid);
        swapped.T1 = f.T2;
        swapped.T2 = f.T1;
        std::vector<double> d1, d2, s1, s2;
        rhs(f, 4.4, 4.0, p, d1, d2);
        rhs(swapped, -4.0, -4.4, p, s1, s2);
        for (std::size_t j = 0; j < d1.size(); ++j) {
            CHECK(s1[j] == d2[j]);
            CHECK(s2[j] == d1[j]);
        }
    }
}

TEST_CASE("one explicit step") {
    const PhysicalParams p = reference_params();
    const RingGeometry geom{21.0, 0.0};
    const Grid grid(128, geom);

    SUBCASE("dt = 0 is the identity") {
        const FieldState f = cos_cos_field(grid, 1, 1.0);
        const FieldState out = step_rk4(f, 0.0, 4.2, 4.2, p);
        CHECK(out.T1 == f.T1);
        CHECK(out.T2 == f.T2);
        CHECK(out.time == f.time);
    }
    SUBCASE("instability guard aborts on a wild step") {
        // Alternating-sign content sits on the least stable grid mode.
        FieldState f(grid);
        for (int j = 0; j < grid.N; ++j) f.T1[j] = (j % 2 == 0) ? 1.0 : -1.0;
        const double dt = 100.0 * stable_dt(grid, 0.0, 0.0, rates_of(p), 1.0);
        CHECK_THROWS_AS(step_rk4(f, dt, 0.0, 0.0, p), NumericalError);
    }
    SUBCASE("instability guard trips during a reckless run") {
        const FieldState f = cos_cos_field(grid, 1, 1.0);
        StepPolicy reckless;
        reckless.safety = 40.0;
        CHECK_THROWS_AS(simulate(f, 10.0, reckless, 0.0, 0.0, p), NumericalError);
    }
}

TEST_CASE("pure diffusion decay of a single harmonic") {
    // Equal fields keep the coupling silent; v = 0 leaves plain diffusion.
    const PhysicalParams p = reference_params();
    const RingGeometry geom{21.0, 0.0};
    const Grid grid(256, geom);
    const FieldState init = cos_cos_field(grid, 1, 1.0);
    StepPolicy policy;
    const FieldState out = simulate(init, 1.0, policy, 0.0, 0.0, p);
    const double want = std::exp(-p.D / (21.0 * 21.0));
    // T1(0) tracks the amplitude: x = 0 is the cos peak.
    CHECK(out.T1[0] == doctest::Approx(want).epsilon(2e-5));
}

TEST_CASE("heat-kernel decay without coupling") {
    const RingGeometry geom{21.0, 0.0};
    const Grid grid(256, geom);
    const TransportRates rates{100.0, 0.0};
    FieldState init = cos_cos_field(grid, 1, 1.0);
    init.T2.assign(init.T2.size(), 0.0);
    StepPolicy policy;
    const FieldState out = simulate(init, 1.0, policy, 0.0, 0.0, rates);
    const double want = std::exp(-100.0 / (21.0 * 21.0));
    double err = 0.0;
    for (int j = 0; j < grid.N; ++j) {
        err = std::max(err, std::abs(out.T1[j] - want * std::cos(grid.x(j) / 21.0)));
    }
    CHECK(err / want <= 1e-4);
}

TEST_CASE("mean of (T1 + T2) is conserved") {
    const PhysicalParams p = reference_params();
    const RingGeometry geom{21.0, 0.0};
    const Grid grid(128, geom);
    FieldState f = cos_sin_field(grid, 1, 1.0, 0.0);
    for (auto& v : f.T1) v += 0.75;  // nonzero mode-0 content

    const TransportRates r = rates_of(p);
    const double dt = stable_dt(grid, 4.2, 4.2, r, 0.4);
    auto mean = [&](const FieldState& s) {
        double acc = 0.0;
        for (std::size_t j = 0; j < s.T1.size(); ++j) acc += s.T1[j] + s.T2[j];
        return acc / static_cast<double>(2 * s.grid.N);
    };
    const double m0 = mean(f);
    for (int step = 0; step < 1000; ++step) f = step_rk4(f, dt, 4.2, 4.2, r);
    CHECK(std::abs(mean(f) - m0) <= 1e-10);
}

TEST_CASE("cross-solver agreement at the coalescence point") {
    const PhysicalParams p = reference_params();
    const RingGeometry geom{21.0, 0.0};
    const Grid grid(256, geom);
    const FieldState init = cos_cos_field(grid, 1, 1.0);
    StepPolicy policy;
    const FieldState fd = simulate(init, 10.0, policy, 4.2, 4.2, p);
    const FieldState spectral = evolve(init, 10.0, 4.2, 4.2, p);
    CHECK(rel_linf_vs(fd, spectral) <= 1e-3);
}

TEST_CASE("second-order spatial convergence") {
    const PhysicalParams p = reference_params();
    const RingGeometry geom{21.0, 0.0};
    StepPolicy policy;
    double errors[3];
    const int Ns[3] = {128, 256, 512};
    for (int i = 0; i < 3; ++i) {
        const Grid grid(Ns[i], geom);
        const FieldState init = cos_cos_field(grid, 1, 1.0);
        const FieldState fd = simulate(init, 10.0, policy, 4.2, 4.2, p);
        const FieldState spectral = evolve(init, 10.0, 4.2, 4.2, p);
        errors[i] = rel_linf_vs(fd, spectral);
    }
    const double order1 = std::log2(errors[0] / errors[1]);
    const double order2 = std::log2(errors[1] / errors[2]);
    CHECK(order1 == doctest::Approx(2.0).epsilon(0.15));
    CHECK(order2 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("moving-frame equivalence of the detuned run") {
    const PhysicalParams p = reference_params();
    const RingGeometry geom{21.0, 0.0};
    const Grid grid(256, geom);
    const FieldState init = cos_cos_field(grid, 1, 1.0);
    StepPolicy policy;
    const double dv = 0.2, t = 10.0;
    const FieldState detuned = simulate(init, t, policy, 4.2 + dv, 4.2 - dv, p);
    const FieldState symmetric = simulate(init, t, policy, 4.2, 4.2, p);
    const FieldState shifted = shift_field(symmetric, dv * t);
    CHECK(rel_linf_vs(detuned, shifted) <= 1e-3);
}

TEST_CASE("fitted decay at the coalescence point matches lambda h_c") {
    const PhysicalParams p = reference_params();
    const RingGeometry geom{21.0, 0.0};
    const Grid grid(256, geom);
    const FieldState init = cos_negsin_field(grid, 1, 1.0);
    StepPolicy policy;
    policy.snapshot_every = 500;
    std::vector<double> ts, mags;
    simulate(init, 10.0, policy, 4.2, 4.2, p, [&](const FieldState& f) {
        ts.push_back(f.time);
        mags.push_back(std::abs(mode_amplitudes(f, 1).first));
    });
    REQUIRE(ts.size() >= 10);
    const DecayFit fit = fit_decay(ts, mags);
    const double want = derive_hc(p) + 100.0 / 441.0;
    CHECK(std::abs(fit.rate - want) <= 0.01 * want);
}

TEST_CASE("grid floor") {
    const RingGeometry geom{21.0, 0.0};
    CHECK_THROWS_AS(Grid(8, geom), ParamDomainError);
    CHECK_THROWS_AS(Grid(15, geom), ParamDomainError);
    CHECK_NOTHROW(Grid(16, geom));
}

TEST_CASE("simulate argument guards") {
    const PhysicalParams p = reference_params();
    const RingGeometry geom{21.0, 0.0};
    const Grid grid(64, geom);
    const FieldState init = cos_cos_field(grid, 1, 1.0);
    StepPolicy policy;
    CHECK_THROWS_AS(simulate(init, 0.0, policy, 4.2, 4.2, p), ParamDomainError);
    CHECK_THROWS_AS(simulate(init, -2.0, policy, 4.2, 4.2, p), ParamDomainError);
}

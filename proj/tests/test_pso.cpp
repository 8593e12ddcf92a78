#include "doctest.h"

#include "wsie/error.hpp"
#include "wsie/pso.hpp"

#include <cmath>
#include <limits>

using namespace wsie;

namespace {

PsoConfig box02() {
    PsoConfig c;
    c.eps_bounds = {0.0, 2.0};
    c.rho_bounds = {0.0, 2.0};
    c.log_rho = false;
    return c;
}

double quadratic(double e, double r) { return (e - 1.0) * (e - 1.0) + (r - 0.5) * (r - 0.5); }

}  // namespace

TEST_SUITE("pso") {

TEST_CASE("logistic map") {
    const auto z = logistic_sequence(0.3, 4.0, 2);
    CHECK(z[0] == doctest::Approx(0.84).epsilon(1e-15));
    CHECK(z[1] == doctest::Approx(0.5376).epsilon(1e-15));

    double a = 0.3, b = 0.3 + 1e-9;
    bool diverged = false;
    for (int k = 0; k < 40 && !diverged; ++k) {
        a = logistic(a, 4.0);
        b = logistic(b, 4.0);
        diverged = std::abs(a - b) > 0.1;
    }
    CHECK(diverged);
}

TEST_CASE("chaotic initialisation maps onto the bounds") {
    auto cfg = box02();
    const auto s = chaotic_init(cfg, quadratic);
    CHECK(s.particles[0].position[0] == doctest::Approx(1.68).epsilon(1e-14));
    CHECK(s.particles[1].position[0] == doctest::Approx(2.0 * 0.5376).epsilon(1e-14));
    CHECK(s.history.size() == 1);
    CHECK(s.evaluations == cfg.swarm_size);
}

TEST_CASE("sine map inertia") {
    PsoConfig cfg;
    SwarmState s;
    s.sine_state = 0.5;
    CHECK(inertia_weight(s, cfg) == 0.9);
    CHECK(s.sine_state == doctest::Approx(1.0));
    s.sine_state = 1.0 / 6.0;
    CHECK(inertia_weight(s, cfg) == doctest::Approx(0.5).epsilon(1e-14));
    s.sine_state = 1e-9;
    CHECK(inertia_weight(s, cfg) == 0.4);
}

TEST_CASE("scac coefficients") {
    const auto end = scac(100, 100);
    CHECK(end[0] == doctest::Approx(2.0));
    CHECK(end[1] == doctest::Approx(2.5));
    const auto start = scac(0, 100);
    CHECK(start[0] == doctest::Approx(2.5));
    CHECK(start[1] == doctest::Approx(2.0).epsilon(1e-12));
    const auto mid = scac(50, 100);
    CHECK(mid[0] == doctest::Approx(2.0 + 0.25 * std::sqrt(2.0)));
    CHECK(mid[1] == doctest::Approx(mid[0]));
}

TEST_CASE("step fixed point and pure inertia") {
    auto cfg = box02();
    cfg.swarm_size = 1;
    auto s = chaotic_init(cfg, quadratic);
    const auto before = s.particles[0];
    StepDraws zero{{{0.0, 0.0}}, {{0.0, 0.0}}};
    step(s, quadratic, cfg, &zero);
    CHECK(s.t == 1);
    CHECK(s.particles[0].position == before.position);

    s.particles[0].velocity = {0.1, -0.05};
    const auto p0 = s.particles[0].position;
    const double x_prev = s.sine_state;
    step(s, quadratic, cfg, &zero);
    const double w = std::clamp(sine_map(x_prev, cfg.varrho), cfg.w_min, cfg.w_max);
    CHECK(s.particles[0].position[0] == doctest::Approx(p0[0] + w * 0.1));
    CHECK(s.particles[0].position[1] == doctest::Approx(p0[1] - w * 0.05));

    StepDraws wrong{{}, {}};
    CHECK_THROWS_AS(step(s, quadratic, cfg, &wrong), ConfigError);
}

TEST_CASE("quadratic optimum") {
    const auto r = optimize(quadratic, box02());
    CHECK(std::abs(r.eps_opt - 1.0) <= 1e-4);
    CHECK(std::abs(r.rho_opt - 0.5) <= 1e-4);
}

TEST_CASE("sphere cost with seed 7") {
    auto cfg = box02();
    cfg.seed = 7;
    cfg.stall_limit = 1000;
    // Bounds are nonnegative, so the sphere is centred inside the box.
    CHECK(optimize([](double x, double y) { return (x - 1) * (x - 1) + (y - 1) * (y - 1); }, cfg).best_cost <= 1e-5);
}

TEST_CASE("history is monotone and reproducible; evaluations stay in bounds") {
    for (std::uint64_t seed : {0u, 1u, 42u}) {
        PsoConfig cfg;
        cfg.seed = seed;
        bool inside = true;
        auto cost = [&](double e, double r) {
            inside = inside && e >= cfg.eps_bounds[0] && e <= cfg.eps_bounds[1] && r >= cfg.rho_bounds[0] &&
                     r <= cfg.rho_bounds[1];
            return std::pow(std::log10(r) + 8.0, 2) + std::pow(e - 0.4, 2);
        };
        const auto a = optimize(cost, cfg);
        const auto b = optimize(cost, cfg);
        CHECK(inside);
        CHECK(a.history == b.history);
        CHECK(a.eps_opt == b.eps_opt);
        for (std::size_t t = 1; t < a.history.size(); ++t) CHECK(a.history[t] <= a.history[t - 1]);
    }
}

TEST_CASE("stopping rules and failures") {
    PsoConfig cfg;
    const auto flat = optimize([](double, double) { return 1.0; }, cfg);
    CHECK(flat.stalled);
    CHECK(flat.iterations == cfg.stall_limit);

    CHECK_THROWS_AS((void)optimize([](double, double) { return std::numeric_limits<double>::infinity(); }, cfg),
                    OptimizationError);
    // Library errors inside the cost count as infinite cost.
    const auto r = optimize(
        [](double e, double) {
            if (e > 1.0) throw NumericalError("boom");
            return (e - 0.5) * (e - 0.5);
        },
        cfg);
    CHECK(r.eps_opt <= 1.0);

    PsoConfig bad;
    bad.z0 = 0.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = PsoConfig{};
    bad.eps_bounds = {-1.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

}

#include "wsie/pso.hpp"

#include "wsie/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wsie {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double safe_cost(const PsoCost& cost, const std::array<double, 2>& p) {
    double c = kInf;
    try {
        c = cost(p[0], p[1]);
    } catch (const Error&) {
        c = kInf;
    }
    return std::isfinite(c) ? c : kInf;
}

}  // namespace

void PsoConfig::validate() const {
    if (swarm_size < 1) throw ConfigError("pso: swarm size must be positive");
    if (max_iters < 1) throw ConfigError("pso: max_iters must be positive");
    if (!(mu > 3.569945671 && mu <= 4.0)) throw ConfigError("pso: mu must lie in (3.569945671, 4]");
    if (!(z0 > 0.0 && z0 < 1.0) || z0 == 0.25 || z0 == 0.5 || z0 == 0.75)
        throw ConfigError("pso: z0 must lie in (0, 1) and differ from 0.25, 0.5, 0.75");
    if (!(varrho > 0.0 && varrho <= 4.0)) throw ConfigError("pso: varrho must lie in (0, 4]");
    if (!(w_min <= w_max)) throw ConfigError("pso: w_min must not exceed w_max");
    if (stall_limit < 1) throw ConfigError("pso: stall_limit must be positive");
    for (const auto* b : {&eps_bounds, &rho_bounds}) {
        if (!((*b)[0] >= 0.0 && (*b)[0] <= (*b)[1])) throw ConfigError("pso: bounds must satisfy 0 <= min <= max");
    }
    if (log_rho && !(rho_bounds[0] > 0.0)) throw ConfigError("pso: log-space rho needs a positive lower bound");
}

double logistic(double z, double mu) { return mu * z * (1.0 - z); }

std::vector<double> logistic_sequence(double z0, double mu, std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    double z = z0;
    for (std::size_t j = 0; j < count; ++j) {
        z = logistic(z, mu);
        out.push_back(z);
    }
    return out;
}

double sine_map(double x, double varrho) { return 0.25 * varrho * std::sin(std::numbers::pi * x); }

double inertia_weight(SwarmState& state, const PsoConfig& config) {
    const double raw = sine_map(state.sine_state, config.varrho);
    state.sine_state = raw;
    return std::clamp(raw, config.w_min, config.w_max);
}

std::array<double, 2> scac(int t, int T) {
    const double a = (1.0 - static_cast<double>(t) / T) * std::numbers::pi / 2.0;
    return {2.0 + 0.5 * std::sin(a), 2.0 + 0.5 * std::cos(a)};
}

std::array<double, 2> search_lower(const PsoConfig& c) {
    return {c.eps_bounds[0], c.log_rho ? std::log10(c.rho_bounds[0]) : c.rho_bounds[0]};
}

std::array<double, 2> search_upper(const PsoConfig& c) {
    return {c.eps_bounds[1], c.log_rho ? std::log10(c.rho_bounds[1]) : c.rho_bounds[1]};
}

std::array<double, 2> to_parameters(const std::array<double, 2>& position, const PsoConfig& c) {
    double rho = c.log_rho ? std::pow(10.0, position[1]) : position[1];
    rho = std::clamp(rho, c.rho_bounds[0], c.rho_bounds[1]);
    return {position[0], rho};
}

SwarmState chaotic_init(const PsoConfig& config, const PsoCost& cost) {
    config.validate();
    SwarmState s;
    s.rng.seed(config.seed);
    s.sine_state = config.z0;

    // Second chaotic coordinate starts from a seeded draw away from the
    // map's fixed and pre-fixed points.
    double z_rho = 0.0;
    do {
        z_rho = 0.05 + 0.9 * uniform01(s.rng);
    } while (z_rho == 0.25 || z_rho == 0.5 || z_rho == 0.75);

    const auto lo = search_lower(config);
    const auto hi = search_upper(config);
    const auto ze = logistic_sequence(config.z0, config.mu, config.swarm_size);
    const auto zr = logistic_sequence(z_rho, config.mu, config.swarm_size);

    s.particles.resize(config.swarm_size);
    s.gbest_cost = kInf;
    for (std::size_t j = 0; j < config.swarm_size; ++j) {
        auto& p = s.particles[j];
        p.position = {lo[0] + ze[j] * (hi[0] - lo[0]), lo[1] + zr[j] * (hi[1] - lo[1])};
        p.velocity = {0.0, 0.0};
        p.cost = safe_cost(cost, to_parameters(p.position, config));
        ++s.evaluations;
        p.best = p.position;
        p.best_cost = p.cost;
        if (j == 0 || p.cost < s.gbest_cost) {
            s.gbest = p.position;
            s.gbest_cost = p.cost;
        }
    }
    s.history.push_back(s.gbest_cost);
    return s;
}

StepDraws draw_step(SwarmState& state) {
    StepDraws d;
    d.r1.resize(state.particles.size());
    d.r2.resize(state.particles.size());
    for (std::size_t j = 0; j < state.particles.size(); ++j) {
        d.r1[j] = {uniform01(state.rng), uniform01(state.rng)};
        d.r2[j] = {uniform01(state.rng), uniform01(state.rng)};
    }
    return d;
}

void step(SwarmState& state, const PsoCost& cost, const PsoConfig& config, const StepDraws* forced) {
    const StepDraws draws = forced ? *forced : draw_step(state);
    if (draws.r1.size() != state.particles.size() || draws.r2.size() != state.particles.size())
        throw ConfigError("pso: draw count does not match the swarm size");

    state.t += 1;
    const double w = inertia_weight(state, config);
    const auto [c1, c2] = scac(std::min(state.t, config.max_iters), config.max_iters);
    const auto lo = search_lower(config);
    const auto hi = search_upper(config);

    for (std::size_t j = 0; j < state.particles.size(); ++j) {
        auto& p = state.particles[j];
        for (std::size_t k = 0; k < 2; ++k) {
            p.velocity[k] = w * p.velocity[k] + c1 * draws.r1[j][k] * (p.best[k] - p.position[k]) +
                            c2 * draws.r2[j][k] * (state.gbest[k] - p.position[k]);
            p.position[k] = std::clamp(p.position[k] + p.velocity[k], lo[k], hi[k]);
        }
    }
    // Costs first, then bests, so the update order cannot depend on evaluation order.
    for (auto& p : state.particles) {
        p.cost = safe_cost(cost, to_parameters(p.position, config));
        ++state.evaluations;
    }
    for (auto& p : state.particles) {
        if (p.cost < p.best_cost) {
            p.best = p.position;
            p.best_cost = p.cost;
        }
        if (p.best_cost < state.gbest_cost) {
            state.gbest = p.best;
            state.gbest_cost = p.best_cost;
        }
    }
    state.history.push_back(state.gbest_cost);
}

PsoResult optimize(const PsoCost& cost, const PsoConfig& config) {
    auto state = chaotic_init(config, cost);
    int stall = 0;
    bool stalled = false;
    while (state.t < config.max_iters) {
        const double before = state.gbest_cost;
        step(state, cost, config);
        const double after = state.gbest_cost;
        const bool improved = std::isfinite(before)
                                  ? (before - after) > config.stall_tol * std::max(std::abs(before), 1e-300)
                                  : std::isfinite(after);
        stall = improved ? 0 : stall + 1;
        if (stall >= config.stall_limit) {
            stalled = true;
            break;
        }
    }
    if (!std::isfinite(state.gbest_cost)) throw OptimizationError("pso: every cost evaluation was non-finite");
    const auto best = to_parameters(state.gbest, config);
    return PsoResult{best[0], best[1], state.gbest_cost, state.history, state.t, state.evaluations, stalled};
}

}  // namespace wsie

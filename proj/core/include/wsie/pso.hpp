#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace wsie {

/// Cost of a kernel parameter pair; receives linear (eps, rho).
using PsoCost = std::function<double(double eps, double rho)>;

struct PsoConfig {
    std::size_t swarm_size = 20;
    int max_iters = 100;
    std::array<double, 2> eps_bounds{0.01, 2.0};
    std::array<double, 2> rho_bounds{1e-12, 1e-2};
    bool log_rho = true;  ///< search rho as log10(rho); bounds must then be positive
    double mu = 4.0;      ///< logistic map coefficient
    double z0 = 0.3;      ///< logistic map seed
    double varrho = 4.0;  ///< sine map gain
    double w_min = 0.4;
    double w_max = 0.9;
    int stall_limit = 20;
    double stall_tol = 1e-12;
    std::uint64_t seed = 0;
    // Classic constant coefficients; recorded but superseded by SCAC.
    double c1_initial = 1.2;
    double c2_initial = 1.7;

    void validate() const;
};

struct Particle {
    std::array<double, 2> position{};  ///< search coordinates (eps, rho or log10 rho)
    std::array<double, 2> velocity{};
    std::array<double, 2> best{};
    double cost = 0.0;
    double best_cost = 0.0;
};

struct SwarmState {
    std::vector<Particle> particles;
    std::array<double, 2> gbest{};
    double gbest_cost = 0.0;
    int t = 0;
    double sine_state = 0.0;  ///< x_{t-1} of the sine map
    std::mt19937_64 rng;
    std::vector<double> history;  ///< gbest cost after initialisation and after every step
    std::size_t evaluations = 0;
};

/// Uniform draws r1, r2 for one step: [particle][dimension].
struct StepDraws {
    std::vector<std::array<double, 2>> r1;
    std::vector<std::array<double, 2>> r2;
};

struct PsoResult {
    double eps_opt = 0.0;
    double rho_opt = 0.0;
    double best_cost = 0.0;
    std::vector<double> history;
    int iterations = 0;
    std::size_t evaluations = 0;
    bool stalled = false;
};

/// One logistic map step mu z (1 - z).
[[nodiscard]] double logistic(double z, double mu);

/// The first `count` iterates z_1, z_2, ... of the logistic map from z0.
[[nodiscard]] std::vector<double> logistic_sequence(double z0, double mu, std::size_t count);

/// Raw sine map value (varrho / 4) sin(pi x).
[[nodiscard]] double sine_map(double x, double varrho);

/// Advances the sine map and returns the clamped inertia weight.
[[nodiscard]] double inertia_weight(SwarmState& state, const PsoConfig& config);

/// Sine cosine acceleration coefficients at iteration t of T.
[[nodiscard]] std::array<double, 2> scac(int t, int T);

/// Maps search coordinates to linear (eps, rho) and back.
[[nodiscard]] std::array<double, 2> to_parameters(const std::array<double, 2>& position, const PsoConfig& config);
[[nodiscard]] std::array<double, 2> search_lower(const PsoConfig& config);
[[nodiscard]] std::array<double, 2> search_upper(const PsoConfig& config);

/// Chaotic initial swarm: particle j sits at the j-th logistic iterate mapped
/// into the bounds; zero velocities; costs evaluated.
[[nodiscard]] SwarmState chaotic_init(const PsoConfig& config, const PsoCost& cost);

/// Draws r1, r2 for the next step from the swarm generator.
[[nodiscard]] StepDraws draw_step(SwarmState& state);

/// One velocity/position update of every particle. Non-finite costs count as +inf.
void step(SwarmState& state, const PsoCost& cost, const PsoConfig& config, const StepDraws* forced = nullptr);

/// Runs until max_iters or stall_limit consecutive iterations without relative
/// improvement above stall_tol. Throws OptimizationError if no cost was finite.
[[nodiscard]] PsoResult optimize(const PsoCost& cost, const PsoConfig& config);

}  // namespace wsie

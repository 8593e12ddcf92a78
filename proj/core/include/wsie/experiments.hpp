#pragma once

#include "wsie/geometry.hpp"
#include "wsie/problems.hpp"
#include "wsie/pso.hpp"
#include "wsie/quadrature.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wsie {

inline constexpr int kSchemaVersion = 1;

[[nodiscard]] std::string library_version();

struct SolveArgs {
    std::string problem = "ex1-log-interval";
    std::string kernel;  ///< empty: the registry default
    double epsilon = 0.2;
    double rho = 1e-8;
    std::size_t n = 10;
    GradedQuadSpec quad{10, 15, 0.01};
    InnerMode inner = InnerMode::Uniform;
    std::optional<NodeStrategy> nodes;  ///< default: equispaced in 1D, halton otherwise
    std::uint64_t seed = 0;
    int eval_resolution = 0;  ///< 0: 200 / 40 / 24 by dimension
    bool pointwise = false;   ///< keep per-point errors
};

struct PointwiseRow {
    Point x;
    double exact = 0.0;
    double approx = 0.0;
};

struct RunRecord {
    SolveArgs args;
    std::string kernel_name;
    std::string node_strategy;
    double fill = 0.0;
    double separation = 0.0;
    double mae = 0.0;
    double rmse = 0.0;
    std::size_t M = 0;
    double condition_number = 0.0;
    double residual_inf = 0.0;
    bool residual_ok = false;
    double assembly_seconds = 0.0;
    double solve_seconds = 0.0;
    std::string failure;  ///< set when a sweep point failed
    std::vector<PointwiseRow> pointwise;
};

/// Resolves defaults (kernel, node strategy, evaluation resolution).
[[nodiscard]] SolveArgs resolve(const SolveArgs& args);

/// assemble -> solve -> error report for one configuration.
[[nodiscard]] RunRecord run_solve(const SolveArgs& args);

/// One record per n. With `use_table`, (eps, rho) come from the published
/// rows of the chosen kernel and every n must have a row.
[[nodiscard]] std::vector<RunRecord> run_converge(const SolveArgs& base, const std::vector<std::size_t>& ns,
                                                  bool use_table);

/// Records over the (eps, rho) grid in row-major order (eps outer). Failed
/// solves are kept with NaN metrics.
[[nodiscard]] std::vector<RunRecord> run_sweep(const SolveArgs& base, const std::vector<double>& epsilons,
                                               const std::vector<double>& rhos);

/// n log-spaced values from a to b inclusive.
[[nodiscard]] std::vector<double> logspace(double a, double b, std::size_t n);

struct TuneRecord {
    SolveArgs base;
    PsoConfig pso;
    PsoResult result;
    double seconds = 0.0;
};

/// PSO over (eps, rho) minimising the MAE of run_solve. Assembly parts that do
/// not depend on (eps, rho) (nodes, right-hand side) are computed once.
[[nodiscard]] TuneRecord pso_tune(const SolveArgs& base, const PsoConfig& pso);

struct QuadTestArgs {
    std::string integrand = "log";
    std::vector<int> ms{10};
    std::vector<int> Ls{15};
    double sigma = 0.01;
    double slack = 4.0;
};

struct QuadTestRow {
    int m = 0;
    int L = 0;
    double sigma = 0.0;
    std::string integrand;
    double value = 0.0;
    double abs_error = 0.0;
    double rate = 0.0;  ///< log2 of error(L/2) / error(L); NaN for the first L
};

struct QuadTestReport {
    std::vector<QuadTestRow> rows;
    bool rate_ok = true;
};

/// Built-in integrands on (0, 1): const, log, rsqrt (y^-1/2), pow-0.4 (y^-0.4).
[[nodiscard]] std::vector<std::string> quad_integrands();
[[nodiscard]] double quad_integrand_exact(const std::string& id);

/// Graded-rule values over m and L; rate_ok checks error(L/2)/error(L) >=
/// 2^(2m)/slack for consecutive doublings whose errors are above round-off.
[[nodiscard]] QuadTestReport run_quad_test(const QuadTestArgs& args);

// Serialisation. JSON documents carry schema_version; wall-clock data sits
// in a separate "metadata" object so the rest is reproducible.
[[nodiscard]] std::string to_json(const RunRecord& record);
[[nodiscard]] std::string to_json(const std::vector<RunRecord>& records, const std::string& kind);
[[nodiscard]] std::string to_json(const TuneRecord& record);
[[nodiscard]] std::string to_json(const QuadTestReport& report);
[[nodiscard]] std::string registry_json();

void write_pointwise_csv(std::ostream& os, const RunRecord& record);
void write_converge_csv(std::ostream& os, const std::vector<RunRecord>& records);
void write_sweep_csv(std::ostream& os, const std::vector<RunRecord>& records);
void write_quad_csv(std::ostream& os, const QuadTestReport& report);
void write_history_csv(std::ostream& os, const PsoResult& result);

}  // namespace wsie

#pragma once

#include "wsie/kernels.hpp"
#include "wsie/quadrature.hpp"
#include "wsie/solver.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wsie {

/// One published parameter row: kernel, n, optimal (eps, rho) and the MAE
/// reported for it.
struct TableRow {
    std::string kernel;
    int n = 0;
    double epsilon = 0.0;
    double rho = 0.0;
    double mae = 0.0;
};

struct ProblemEntry {
    std::string key;
    std::string citation;
    std::string domain_key;
    KernelSpec default_kernel;
    std::vector<TableRow> table;
    std::function<Problem()> make;
};

/// The six benchmark problems.
[[nodiscard]] const std::vector<ProblemEntry>& registry();

/// Alternative formulations: ex2-cos-log-0pi (original interval [0, pi]) and
/// ex2-cos-log-split (four-term R_i S_i form on [0, pi]).
[[nodiscard]] const std::vector<ProblemEntry>& variant_registry();

/// Looks up a key in both registries. Throws ConfigError when unknown.
[[nodiscard]] const ProblemEntry& find_problem(const std::string& key);
[[nodiscard]] Problem make_problem(const std::string& key);

/// Table rows of `entry` for one kernel, in increasing n.
[[nodiscard]] std::vector<TableRow> table_rows(const ProblemEntry& entry, const std::string& kernel);

/// Reference rule used for manufactured right-hand sides, per dimension.
[[nodiscard]] ReferenceQuadSpec default_reference_spec(std::size_t dim);

/// int_Omega K(x, t) u(t) dt with the reference rule.
[[nodiscard]] double reference_operator(const Problem& problem, const ScalarField& u, const Point& x,
                                        const ReferenceQuadSpec& spec);

/// f(x) = u(x) - lambda * int K(x, t) u(t) dt, evaluated with the reference rule
/// and cached per point.
[[nodiscard]] ScalarField manufactured_rhs(const Problem& problem, ScalarField u, const ReferenceQuadSpec& spec);

/// u(x) - lambda * int K(x, t) u(t) dt - f(x) with the reference rule.
[[nodiscard]] double equation_residual(const Problem& problem, const Point& x, const ReferenceQuadSpec& spec);

}  // namespace wsie

#pragma once

#include "wsie/geometry.hpp"
#include "wsie/kernels.hpp"
#include "wsie/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wsie {

/// Kernel factor evaluated at (x, t); `offset` is t - x computed exactly by
/// the quadrature, so factors singular at t = x should use it.
using KernelFn = std::function<double(const Point& x, const Point& t, const Point& offset)>;
using ScalarField = std::function<double(const Point&)>;

/// One product term R * S of the kernel.
struct KernelTerm {
    KernelFn singular;
    KernelFn smooth;
};

/// u(x) - lambda int_Omega K(x, t) u(t) dt = f(x) with K = sum of R_i S_i.
struct Problem {
    std::string key;
    Domain domain;
    double lambda = 1.0;
    std::vector<KernelTerm> terms;
    ScalarField rhs;
    ScalarField exact;  ///< empty when unknown
    double sigma_hint = 0.01;

    [[nodiscard]] double kernel(const Point& x, const Point& t, const Point& offset) const;
    [[nodiscard]] bool has_exact() const { return static_cast<bool>(exact); }
};

struct AssemblyOptions {
    InnerMode inner = InnerMode::Uniform;
    std::optional<double> lambda_override;  ///< lambda = 0 gives the interpolation matrix
};

struct CollocationSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    NodeSet nodes;
    HybridKernel kernel;
    GradedQuadSpec quad;
    double lambda = 1.0;
    double assembly_seconds = 0.0;
};

struct Solution {
    Eigen::VectorXd coefficients;
    NodeSet nodes;
    HybridKernel kernel;
    double condition_number = 0.0;
    double residual_inf = 0.0;
    bool residual_ok = false;  ///< |A c - f|_inf <= 1e-8 max(1, |f|_inf)
    double assembly_seconds = 0.0;
    double solve_seconds = 0.0;
};

struct ErrorReport {
    double mae = 0.0;
    double rmse = 0.0;
    std::size_t M = 0;
    int eval_resolution = 0;
};

/// Entry (i, j) = psi_j(x_i) - lambda * Q_i[K(x_i, .) psi_j] with the split
/// graded rule centred at x_i; rhs_i = f(x_i).
[[nodiscard]] CollocationSystem assemble(const Problem& problem, const NodeSet& nodes, const HybridKernel& kernel,
                                         const GradedQuadSpec& quad, const AssemblyOptions& options = {});

/// Parameter-independent part of the assembly: the quadrature rule of every
/// row with kernel values folded into the weights, the nodes and the rhs.
/// Re-assembling for a new HybridKernel then costs only psi evaluations.
/// Memory grows with n times the rule size.
class PreparedAssembly {
public:
    PreparedAssembly(const Problem& problem, const NodeSet& nodes, const GradedQuadSpec& quad,
                     const AssemblyOptions& options = {});

    [[nodiscard]] CollocationSystem assemble(const HybridKernel& kernel) const;
    [[nodiscard]] const NodeSet& nodes() const noexcept { return nodes_; }
    [[nodiscard]] double preparation_seconds() const noexcept { return prep_seconds_; }

    struct Row {
        Eigen::ArrayXd kw;                  ///< weight * K(x_i, t_q)
        std::vector<Eigen::ArrayXd> coords;  ///< t_q per axis
    };

private:
    NodeSet nodes_;
    GradedQuadSpec quad_;
    double lambda_ = 1.0;
    Eigen::VectorXd rhs_;
    std::vector<Row> rows_;
    double prep_seconds_ = 0.0;
};

/// LU with partial pivoting; records the 2-norm condition number.
/// Throws SingularSystemError on a vanishing pivot.
[[nodiscard]] Solution solve_dense(const CollocationSystem& system);

/// 2-norm condition number from the singular values.
[[nodiscard]] double condition_number(const Eigen::MatrixXd& matrix);
[[nodiscard]] double condition_number(const CollocationSystem& system);

[[nodiscard]] double evaluate_solution(const Solution& sol, const Point& x);
[[nodiscard]] std::vector<double> evaluate_solution(const Solution& sol, const std::vector<Point>& xs);

/// Default evaluation resolution: 200 points in 1D, 40^2 in 2D, 24^3 in 3D.
[[nodiscard]] int default_eval_resolution(std::size_t dim);

/// MAE and RMSE over the evaluation grid. Needs problem.exact.
[[nodiscard]] ErrorReport error_report(const Solution& sol, const Problem& problem, int resolution);
[[nodiscard]] ErrorReport error_report(const std::vector<double>& approx, const std::vector<double>& exact,
                                       int resolution = 0);

}  // namespace wsie

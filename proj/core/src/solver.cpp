#include "wsie/solver.hpp"

#include "wsie/error.hpp"

#include <Eigen/SVD>

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace wsie {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double Problem::kernel(const Point& x, const Point& t, const Point& offset) const {
    double k = 0.0;
    for (const auto& term : terms) k += term.singular(x, t, offset) * term.smooth(x, t, offset);
    return k;
}

namespace {

struct Checked {
    double lambda;
};

Checked check_inputs(const Problem& problem, const NodeSet& nodes, const GradedQuadSpec& quad,
                     const AssemblyOptions& options) {
    quad.validate();
    const double lambda = options.lambda_override.value_or(problem.lambda);
    if (!options.lambda_override && lambda == 0.0) throw ConfigError("problem lambda must be nonzero");
    if (problem.terms.empty()) throw ConfigError("problem has no kernel terms");
    if (!problem.rhs) throw ConfigError("problem has no right-hand side");
    if (nodes.size() < 1) throw ConfigError("no collocation nodes");
    for (const auto& x : nodes.points)
        if (x.dim != problem.domain.dim) throw DomainError("node dimension does not match the domain");
    return {lambda};
}

PreparedAssembly::Row row_quadrature(const Problem& problem, std::size_t i, const Point& xi, const GradedQuadSpec& quad,
                                     InnerMode inner) {
    const auto rule = domain_rule(problem.domain.pieces, xi, quad, inner);
    const auto N = static_cast<Eigen::Index>(rule.size());
    PreparedAssembly::Row row;
    row.kw.resize(N);
    for (Eigen::Index q = 0; q < N; ++q) {
        const auto qi = static_cast<std::size_t>(q);
        const Point t = rule.point(qi);
        const double k = problem.kernel(xi, t, rule.offset(qi));
        if (!std::isfinite(k)) {
            std::ostringstream os;
            os << "assembly: non-finite kernel at row " << i << ", quadrature node " << t;
            throw AssemblyError(os.str(), i, 0);
        }
        row.kw[q] = rule.weight(qi) * k;
    }
    for (std::size_t a = 0; a < xi.dim; ++a)
        row.coords.push_back(Eigen::Map<const Eigen::ArrayXd>(rule.coords(a).data(), N));
    return row;
}

// Row i of the matrix: psi_j(x_i) - lambda * sum_q kw_q psi_j(t_q).
void fill_row(Eigen::MatrixXd& A, std::size_t i, const NodeSet& nodes, const HybridKernel& kernel, double lambda,
              const PreparedAssembly::Row* row) {
    const std::size_t n = nodes.size();
    const Point& xi = nodes.points[i];
    Eigen::ArrayXd r2_nodes(static_cast<Eigen::Index>(n)), psi_nodes;
    for (std::size_t j = 0; j < n; ++j) r2_nodes[static_cast<Eigen::Index>(j)] = squared_distance(xi, nodes.points[j]);
    kernel.eval_squared(r2_nodes, psi_nodes);
    if (!row) {
        A.row(static_cast<Eigen::Index>(i)) = psi_nodes.matrix().transpose();
        return;
    }
    Eigen::ArrayXd r2, psi;
    for (std::size_t j = 0; j < n; ++j) {
        const Point& xj = nodes.points[j];
        r2 = (row->coords[0] - xj[0]).square();
        for (std::size_t a = 1; a < row->coords.size(); ++a) r2 += (row->coords[a] - xj[a]).square();
        kernel.eval_squared(r2, psi);
        const double entry = psi_nodes[static_cast<Eigen::Index>(j)] - lambda * (row->kw * psi).sum();
        if (!std::isfinite(entry)) {
            std::ostringstream os;
            os << "assembly: non-finite matrix entry (" << i << ", " << j << ")";
            throw AssemblyError(os.str(), i, j);
        }
        A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry;
    }
}

}  // namespace

CollocationSystem assemble(const Problem& problem, const NodeSet& nodes, const HybridKernel& kernel,
                           const GradedQuadSpec& quad, const AssemblyOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    const double lambda = check_inputs(problem, nodes, quad, options).lambda;
    const std::size_t n = nodes.size();
    CollocationSystem sys{Eigen::MatrixXd(n, n), Eigen::VectorXd(n), nodes, kernel, quad, lambda, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const Point& xi = nodes.points[i];
        sys.rhs[static_cast<Eigen::Index>(i)] = problem.rhs(xi);
        if (lambda == 0.0) {
            fill_row(sys.matrix, i, nodes, kernel, lambda, nullptr);
        } else {
            const auto row = row_quadrature(problem, i, xi, quad, options.inner);
            fill_row(sys.matrix, i, nodes, kernel, lambda, &row);
        }
    }
    sys.assembly_seconds = seconds_since(t0);
    return sys;
}

PreparedAssembly::PreparedAssembly(const Problem& problem, const NodeSet& nodes, const GradedQuadSpec& quad,
                                   const AssemblyOptions& options)
    : nodes_(nodes), quad_(quad) {
    const auto t0 = std::chrono::steady_clock::now();
    lambda_ = check_inputs(problem, nodes, quad, options).lambda;
    const std::size_t n = nodes.size();
    rhs_.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const Point& xi = nodes.points[i];
        rhs_[static_cast<Eigen::Index>(i)] = problem.rhs(xi);
        if (lambda_ != 0.0) rows_.push_back(row_quadrature(problem, i, xi, quad, options.inner));
    }
    prep_seconds_ = seconds_since(t0);
}

CollocationSystem PreparedAssembly::assemble(const HybridKernel& kernel) const {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = nodes_.size();
    CollocationSystem sys{Eigen::MatrixXd(n, n), rhs_, nodes_, kernel, quad_, lambda_, 0.0};
    for (std::size_t i = 0; i < n; ++i) fill_row(sys.matrix, i, nodes_, kernel, lambda_, rows_.empty() ? nullptr : &rows_[i]);
    sys.assembly_seconds = seconds_since(t0);
    return sys;
}

double condition_number(const Eigen::MatrixXd& matrix) {
    if (!matrix.allFinite()) throw NumericalError("condition_number: matrix has non-finite entries");
    if (matrix.size() == 0) throw NumericalError("condition_number: empty matrix");
    Eigen::VectorXd sv;
    if (matrix.rows() <= 500) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix);
        if (svd.info() != Eigen::Success) throw NumericalError("condition_number: SVD did not converge");
        sv = svd.singularValues();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix);
        if (svd.info() != Eigen::Success) throw NumericalError("condition_number: SVD did not converge");
        sv = svd.singularValues();
    }
    const double smin = sv.minCoeff();
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return sv.maxCoeff() / smin;
}

double condition_number(const CollocationSystem& system) { return condition_number(system.matrix); }

Solution solve_dense(const CollocationSystem& system) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& A = system.matrix;
    if (!A.allFinite() || !system.rhs.allFinite()) throw NumericalError("solve_dense: non-finite system");
    if (A.rows() != A.cols() || A.rows() != system.rhs.size()) throw ConfigError("solve_dense: shape mismatch");

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const auto& LU = lu.matrixLU();
    const double umax = LU.triangularView<Eigen::Upper>().toDenseMatrix().cwiseAbs().maxCoeff();
    const double eps = std::numeric_limits<double>::epsilon();
    const double tol = umax * static_cast<double>(A.rows()) * eps * eps;
    const double kappa = condition_number(A);
    if (LU.diagonal().cwiseAbs().minCoeff() <= tol)
        throw SingularSystemError("solve_dense: numerically singular collocation matrix", kappa);

    Solution sol{lu.solve(system.rhs), system.nodes, system.kernel, kappa, 0.0, false, system.assembly_seconds, 0.0};
    sol.residual_inf = (A * sol.coefficients - system.rhs).cwiseAbs().maxCoeff();
    const double fmax = system.rhs.cwiseAbs().maxCoeff();
    sol.residual_ok = sol.residual_inf <= 1e-8 * std::max(1.0, fmax);
    sol.solve_seconds = seconds_since(t0);
    return sol;
}

double evaluate_solution(const Solution& sol, const Point& x) {
    const auto n = static_cast<Eigen::Index>(sol.nodes.size());
    Eigen::ArrayXd r2(n), psi;
    for (Eigen::Index j = 0; j < n; ++j) r2[j] = squared_distance(x, sol.nodes.points[static_cast<std::size_t>(j)]);
    sol.kernel.eval_squared(r2, psi);
    return (psi * sol.coefficients.array()).sum();
}

std::vector<double> evaluate_solution(const Solution& sol, const std::vector<Point>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(evaluate_solution(sol, x));
    return out;
}

int default_eval_resolution(std::size_t dim) {
    switch (dim) {
        case 1: return 200;
        case 2: return 40;
        default: return 24;
    }
}

ErrorReport error_report(const std::vector<double>& approx, const std::vector<double>& exact, int resolution) {
    if (approx.size() != exact.size() || approx.empty())
        throw ConfigError("error_report: value lists must be non-empty and of equal length");
    ErrorReport rep;
    double sq = 0.0;
    for (std::size_t k = 0; k < approx.size(); ++k) {
        const double e = std::abs(approx[k] - exact[k]);
        rep.mae = std::max(rep.mae, e);
        sq += e * e;
    }
    rep.rmse = std::min(rep.mae, std::sqrt(sq / static_cast<double>(approx.size())));
    rep.M = approx.size();
    rep.eval_resolution = resolution;
    return rep;
}

ErrorReport error_report(const Solution& sol, const Problem& problem, int resolution) {
    if (!problem.has_exact()) throw ConfigError("error_report: problem has no exact solution");
    const auto grid = evaluation_grid(problem.domain, resolution);
    std::vector<double> exact;
    exact.reserve(grid.size());
    for (const auto& p : grid) exact.push_back(problem.exact(p));
    return error_report(evaluate_solution(sol, grid), exact, resolution);
}

}  // namespace wsie

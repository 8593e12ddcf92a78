#include "wsie/experiments.hpp"

#include "wsie/error.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#ifndef WSIE_VERSION
#define WSIE_VERSION "0.0.0"
#endif

namespace wsie {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string inner_name(InnerMode m) { return m == InnerMode::Uniform ? "uniform" : "split"; }

json config_json(const SolveArgs& a) {
    return json{{"problem", a.problem},
                {"kernel", a.kernel},
                {"epsilon", a.epsilon},
                {"rho", a.rho},
                {"n", a.n},
                {"m", a.quad.m},
                {"L", a.quad.L},
                {"sigma", a.quad.sigma},
                {"inner", inner_name(a.inner)},
                {"nodes", a.nodes ? to_string(*a.nodes) : std::string()},
                {"seed", a.seed},
                {"eval_resolution", a.eval_resolution}};
}

json metrics_json(const RunRecord& r) {
    json j{{"problem", r.args.problem},
           {"kernel", r.kernel_name},
           {"epsilon", r.args.epsilon},
           {"rho", r.args.rho},
           {"n", r.args.n},
           {"mae", r.mae},
           {"rmse", r.rmse},
           {"M", r.M},
           {"condition_number", r.condition_number},
           {"residual_inf", r.residual_inf},
           {"residual_ok", r.residual_ok},
           {"fill_distance", r.fill},
           {"separation_distance", r.separation}};
    if (!r.failure.empty()) j["failure"] = r.failure;
    return j;
}

json metadata_json(double seconds_total) {
    return json{{"version", library_version()}, {"wall_seconds", seconds_total}};
}

json record_json(const RunRecord& r) {
    json j{{"config", config_json(r.args)}, {"metrics", metrics_json(r)}};
    j["timing"] = json{{"assembly_seconds", r.assembly_seconds}, {"solve_seconds", r.solve_seconds}};
    return j;
}

// Timings are moved out of the records into the metadata block.
json split_timings(json records, json& timings) {
    timings = json::array();
    for (auto& r : records) {
        timings.push_back(r["timing"]);
        r.erase("timing");
    }
    return records;
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return json(v).dump();
}

NodeStrategy default_strategy(std::size_t dim) { return dim == 1 ? NodeStrategy::Equispaced : NodeStrategy::Halton; }

RunRecord solve_with(const SolveArgs& args, const Problem& problem, const NodeSet& nodes,
                     const PreparedAssembly* prepared) {
    RunRecord rec;
    rec.args = args;
    rec.kernel_name = args.kernel;
    rec.node_strategy = to_string(*args.nodes);
    rec.fill = nodes.fill;
    rec.separation = nodes.separation;

    const HybridKernel kernel(parse_kernel_spec(args.kernel), args.epsilon, args.rho);
    const auto sys = prepared ? prepared->assemble(kernel)
                              : assemble(problem, nodes, kernel, args.quad, AssemblyOptions{args.inner, {}});
    const auto sol = solve_dense(sys);
    rec.condition_number = sol.condition_number;
    rec.residual_inf = sol.residual_inf;
    rec.residual_ok = sol.residual_ok;
    rec.assembly_seconds = sol.assembly_seconds;
    rec.solve_seconds = sol.solve_seconds;

    const auto grid = evaluation_grid(problem.domain, args.eval_resolution);
    std::vector<double> exact, approx = evaluate_solution(sol, grid);
    exact.reserve(grid.size());
    for (const auto& p : grid) exact.push_back(problem.exact(p));
    const auto rep = error_report(approx, exact, args.eval_resolution);
    rec.mae = rep.mae;
    rec.rmse = rep.rmse;
    rec.M = rep.M;
    if (args.pointwise)
        for (std::size_t k = 0; k < grid.size(); ++k) rec.pointwise.push_back({grid[k], exact[k], approx[k]});
    return rec;
}

}  // namespace

std::string library_version() { return WSIE_VERSION; }

SolveArgs resolve(const SolveArgs& args) {
    SolveArgs a = args;
    const auto& entry = find_problem(a.problem);
    if (a.kernel.empty()) a.kernel = entry.default_kernel.to_string();
    a.kernel = parse_kernel_spec(a.kernel).to_string();
    const auto dim = domain_from_key(entry.domain_key).dim;
    if (!a.nodes) a.nodes = default_strategy(dim);
    if (a.eval_resolution == 0) a.eval_resolution = default_eval_resolution(dim);
    if (a.n < 2) throw ConfigError("n must be at least 2");
    a.quad.validate();
    return a;
}

RunRecord run_solve(const SolveArgs& args) {
    const auto a = resolve(args);
    const auto problem = make_problem(a.problem);
    if (!problem.has_exact()) throw ConfigError("problem '" + a.problem + "' has no exact solution");
    const auto nodes = generate_nodes(problem.domain, a.n, *a.nodes, a.seed);
    return solve_with(a, problem, nodes, nullptr);
}

std::vector<RunRecord> run_converge(const SolveArgs& base, const std::vector<std::size_t>& ns, bool use_table) {
    const auto b = resolve(base);
    const auto& entry = find_problem(b.problem);
    const auto rows = table_rows(entry, b.kernel);
    const auto problem = make_problem(b.problem);
    std::vector<RunRecord> out;
    for (const auto n : ns) {
        SolveArgs a = b;
        a.n = n;
        if (use_table) {
            const TableRow* hit = nullptr;
            for (const auto& r : rows)
                if (static_cast<std::size_t>(r.n) == n) hit = &r;
            if (!hit)
                throw ConfigError("no published row for " + b.kernel + " with n = " + std::to_string(n) + " in " +
                                  b.problem);
            a.epsilon = hit->epsilon;
            a.rho = hit->rho;
        }
        a = resolve(a);
        const auto nodes = generate_nodes(problem.domain, a.n, *a.nodes, a.seed);
        out.push_back(solve_with(a, problem, nodes, nullptr));
    }
    return out;
}

std::vector<RunRecord> run_sweep(const SolveArgs& base, const std::vector<double>& epsilons,
                                 const std::vector<double>& rhos) {
    const auto b = resolve(base);
    const auto problem = make_problem(b.problem);
    const auto nodes = generate_nodes(problem.domain, b.n, *b.nodes, b.seed);
    const PreparedAssembly prepared(problem, nodes, b.quad, AssemblyOptions{b.inner, {}});
    std::vector<RunRecord> out;
    for (const double e : epsilons)
        for (const double r : rhos) {
            SolveArgs a = b;
            a.epsilon = e;
            a.rho = r;
            try {
                out.push_back(solve_with(a, problem, nodes, &prepared));
            } catch (const Error& err) {
                RunRecord rec;
                rec.args = a;
                rec.kernel_name = a.kernel;
                rec.node_strategy = to_string(*a.nodes);
                rec.fill = nodes.fill;
                rec.separation = nodes.separation;
                rec.mae = rec.rmse = rec.condition_number = rec.residual_inf = kNaN;
                rec.failure = err.what();
                out.push_back(rec);
            }
        }
    return out;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
    if (!(a > 0.0 && b > 0.0)) throw ConfigError("logspace needs positive end points");
    if (n == 0) return {};
    if (n == 1) return {a};
    std::vector<double> v(n);
    const double la = std::log10(a), lb = std::log10(b);
    for (std::size_t k = 0; k < n; ++k) v[k] = std::pow(10.0, la + (lb - la) * static_cast<double>(k) / (n - 1));
    v.front() = a;
    v.back() = b;
    return v;
}

TuneRecord pso_tune(const SolveArgs& base, const PsoConfig& pso) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto b = resolve(base);
    const auto problem = make_problem(b.problem);
    if (!problem.has_exact()) throw ConfigError("pso-tune needs a problem with an exact solution");
    const auto nodes = generate_nodes(problem.domain, b.n, *b.nodes, b.seed);
    const PreparedAssembly prepared(problem, nodes, b.quad, AssemblyOptions{b.inner, {}});
    const auto grid = evaluation_grid(problem.domain, b.eval_resolution);
    std::vector<double> exact;
    for (const auto& p : grid) exact.push_back(problem.exact(p));
    const auto spec = parse_kernel_spec(b.kernel);

    PsoCost cost = [&](double eps, double rho) {
        const HybridKernel kernel(spec, eps, rho);
        const auto sol = solve_dense(prepared.assemble(kernel));
        return error_report(evaluate_solution(sol, grid), exact).mae;
    };
    TuneRecord rec{b, pso, optimize(cost, pso), 0.0};
    rec.seconds = seconds_since(t0);
    return rec;
}

std::vector<std::string> quad_integrands() { return {"const", "log", "rsqrt", "pow-0.4"}; }

double quad_integrand_exact(const std::string& id) {
    if (id == "const") return 1.0;
    if (id == "log") return -1.0;
    if (id == "rsqrt") return 2.0;
    if (id == "pow-0.4") return 1.0 / 0.6;
    throw ConfigError("unknown quadrature integrand '" + id + "'");
}

namespace {

std::function<double(double)> quad_integrand(const std::string& id) {
    if (id == "const") return [](double) { return 1.0; };
    if (id == "log") return [](double y) { return std::log(y); };
    if (id == "rsqrt") return [](double y) { return 1.0 / std::sqrt(y); };
    if (id == "pow-0.4") return [](double y) { return std::pow(y, -0.4); };
    throw ConfigError("unknown quadrature integrand '" + id + "'");
}

}  // namespace

QuadTestReport run_quad_test(const QuadTestArgs& args) {
    const auto g = quad_integrand(args.integrand);
    const double exact = quad_integrand_exact(args.integrand);
    constexpr double kRoundOff = 1e-13;
    QuadTestReport rep;
    for (const int m : args.ms) {
        double prev = kNaN;
        for (const int L : args.Ls) {
            const GradedQuadSpec spec{m, L, args.sigma};
            const double v = graded_cgl_1d(g, spec);
            const double err = std::abs(v - exact);
            double rate = kNaN;
            if (std::isfinite(prev)) {
                rate = std::log2(prev / err);
                if (prev > kRoundOff && err > kRoundOff) {
                    const double ratio = prev / err;
                    if (ratio < std::pow(2.0, 2 * m) / args.slack) rep.rate_ok = false;
                }
            }
            rep.rows.push_back({m, L, args.sigma, args.integrand, v, err, rate});
            prev = err;
        }
    }
    return rep;
}

std::string to_json(const RunRecord& record) {
    json r = record_json(record);
    json j{{"schema_version", kSchemaVersion}, {"kind", "solve"}, {"config", r["config"]}, {"metrics", r["metrics"]}};
    j["metadata"] = metadata_json(record.assembly_seconds + record.solve_seconds);
    j["metadata"]["assembly_seconds"] = record.assembly_seconds;
    j["metadata"]["solve_seconds"] = record.solve_seconds;
    return j.dump(2);
}

std::string to_json(const std::vector<RunRecord>& records, const std::string& kind) {
    json arr = json::array();
    double total = 0.0;
    for (const auto& r : records) {
        arr.push_back(record_json(r));
        total += r.assembly_seconds + r.solve_seconds;
    }
    json timings;
    json j{{"schema_version", kSchemaVersion}, {"kind", kind}, {"records", split_timings(arr, timings)}};
    j["metadata"] = metadata_json(total);
    j["metadata"]["timings"] = timings;
    return j.dump(2);
}

std::string to_json(const TuneRecord& record) {
    const auto& p = record.pso;
    json cfg = config_json(record.base);
    cfg["swarm"] = p.swarm_size;
    cfg["iters"] = p.max_iters;
    cfg["eps_bounds"] = {p.eps_bounds[0], p.eps_bounds[1]};
    cfg["rho_bounds"] = {p.rho_bounds[0], p.rho_bounds[1]};
    cfg["log_rho"] = p.log_rho;
    cfg["mu"] = p.mu;
    cfg["z0"] = p.z0;
    cfg["varrho"] = p.varrho;
    cfg["w_clamp"] = {p.w_min, p.w_max};
    cfg["stall_limit"] = p.stall_limit;
    cfg["pso_seed"] = p.seed;
    cfg["c1_initial"] = p.c1_initial;
    cfg["c2_initial"] = p.c2_initial;
    const auto& r = record.result;
    json j{{"schema_version", kSchemaVersion},
           {"kind", "pso-tune"},
           {"config", cfg},
           {"eps_opt", r.eps_opt},
           {"rho_opt", r.rho_opt},
           {"best_mae", r.best_cost},
           {"iterations_used", r.iterations},
           {"evaluations", r.evaluations},
           {"stalled", r.stalled},
           {"history", r.history}};
    j["metadata"] = metadata_json(record.seconds);
    return j.dump(2);
}

std::string to_json(const QuadTestReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows)
        rows.push_back(json{{"m", r.m},
                            {"L", r.L},
                            {"sigma", r.sigma},
                            {"integrand_id", r.integrand},
                            {"value", r.value},
                            {"abs_error", r.abs_error},
                            {"rate_estimate", std::isfinite(r.rate) ? json(r.rate) : json(nullptr)}});
    json j{{"schema_version", kSchemaVersion}, {"kind", "quad-test"}, {"rate_ok", report.rate_ok}, {"rows", rows}};
    j["metadata"] = metadata_json(0.0);
    return j.dump(2);
}

std::string registry_json() {
    json arr = json::array();
    auto add = [&](const ProblemEntry& e, bool variant) {
        json rows = json::array();
        for (const auto& r : e.table)
            rows.push_back(json{{"kernel", r.kernel}, {"n", r.n}, {"epsilon", r.epsilon}, {"rho", r.rho}, {"mae", r.mae}});
        arr.push_back(json{{"key", e.key},
                           {"citation", e.citation},
                           {"domain", e.domain_key},
                           {"default_kernel", e.default_kernel.to_string()},
                           {"variant", variant},
                           {"table", rows}});
    };
    for (const auto& e : registry()) add(e, false);
    for (const auto& e : variant_registry()) add(e, true);
    return json{{"schema_version", kSchemaVersion}, {"problems", arr}}.dump(2);
}

void write_pointwise_csv(std::ostream& os, const RunRecord& record) {
    const std::size_t d = record.pointwise.empty() ? 1 : record.pointwise.front().x.dim;
    for (std::size_t a = 0; a < d; ++a) os << 'x' << a << ',';
    os << "exact,approximate,abs_error\n";
    for (const auto& r : record.pointwise) {
        for (std::size_t a = 0; a < d; ++a) os << num(r.x[a]) << ',';
        os << num(r.exact) << ',' << num(r.approx) << ',' << num(std::abs(r.exact - r.approx)) << '\n';
    }
}

void write_converge_csv(std::ostream& os, const std::vector<RunRecord>& records) {
    os << "n,h_fill,mae,rmse,condition_number\n";
    for (const auto& r : records)
        os << r.args.n << ',' << num(r.fill) << ',' << num(r.mae) << ',' << num(r.rmse) << ','
           << num(r.condition_number) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<RunRecord>& records) {
    os << "epsilon,rho,rmse,mae,condition_number\n";
    for (const auto& r : records)
        os << num(r.args.epsilon) << ',' << num(r.args.rho) << ',' << num(r.rmse) << ',' << num(r.mae) << ','
           << num(r.condition_number) << '\n';
}

void write_quad_csv(std::ostream& os, const QuadTestReport& report) {
    os << "m,L,sigma,integrand_id,value,abs_error,rate_estimate\n";
    for (const auto& r : report.rows)
        os << r.m << ',' << r.L << ',' << num(r.sigma) << ',' << r.integrand << ',' << num(r.value) << ','
           << num(r.abs_error) << ',' << num(r.rate) << '\n';
}

void write_history_csv(std::ostream& os, const PsoResult& result) {
    os << "iteration,best_cost\n";
    for (std::size_t t = 0; t < result.history.size(); ++t) os << t << ',' << num(result.history[t]) << '\n';
}

}  // namespace wsie

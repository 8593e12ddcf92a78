#include "wsie/error.hpp"
#include "wsie/experiments.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCheck = 4;

struct Common {
    wsie::SolveArgs args;
    std::string nodes;
    std::string inner = "uniform";
    std::string out;
    std::string csv;
};

fs::path output_path(const std::string& name) {
    fs::path p(name);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("WSIE_OUTPUT_DIR"); dir && *dir) p = fs::path(dir) / p;
    }
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
}

void emit(const std::string& name, const std::function<void(std::ostream&)>& write) {
    if (name.empty() || name == "-") {
        write(std::cout);
        return;
    }
    const auto path = output_path(name);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw wsie::ConfigError("cannot open output file " + path.string());
    write(os);
    if (!os) throw wsie::ConfigError("failed writing " + path.string());
}

void emit_text(const std::string& name, const std::string& text) {
    emit(name, [&](std::ostream& os) { os << text << '\n'; });
}

void add_common(CLI::App* app, Common& c) {
    auto& a = c.args;
    app->add_option("-p,--problem", a.problem, "registry key (see list-problems)")->capture_default_str();
    app->add_option("-k,--kernel", a.kernel, "kernel spec, e.g. GA+CU or GA");
    app->add_option("--eps", a.epsilon, "shape parameter")->capture_default_str();
    app->add_option("--rho", a.rho, "weight of the rough kernel")->capture_default_str();
    app->add_option("-n,--n", a.n, "number of collocation nodes")->capture_default_str();
    app->add_option("--m", a.quad.m, "Gauss points per panel")->capture_default_str();
    app->add_option("--L", a.quad.L, "panels per graded side")->capture_default_str();
    app->add_option("--sigma", a.quad.sigma, "singularity order")->capture_default_str();
    app->add_option("--inner", c.inner, "inner level rule in 2D")->check(CLI::IsMember({"uniform", "split"}));
    app->add_option("--nodes", c.nodes, "equispaced | halton | grid")
        ->check(CLI::IsMember({"equispaced", "halton", "grid"}));
    app->add_option("--seed", a.seed, "node seed")->capture_default_str();
    app->add_option("--eval-res", a.eval_resolution, "evaluation grid resolution per axis (0: default)");
    app->add_option("-o,--out", c.out, "JSON result file (relative to $WSIE_OUTPUT_DIR); stdout if omitted");
    app->add_option("--csv", c.csv, "CSV output file");
}

wsie::SolveArgs finish(Common& c) {
    auto a = c.args;
    if (!c.nodes.empty()) a.nodes = wsie::parse_node_strategy(c.nodes);
    a.inner = c.inner == "split" ? wsie::InnerMode::Split : wsie::InnerMode::Uniform;
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid radial kernel collocation for weakly singular Fredholm equations"};
    app.set_config("--config", "", "TOML/INI configuration file; flags override it");
    app.set_version_flag("--version", wsie::library_version());
    app.require_subcommand(1);

    std::function<int()> action;

    Common solve_c;
    std::string pointwise;
    auto* solve = app.add_subcommand("solve", "assemble, solve and report errors for one configuration");
    add_common(solve, solve_c);
    solve->add_option("--pointwise", pointwise, "per-point error CSV");
    solve->callback([&] {
        action = [&] {
            auto a = finish(solve_c);
            a.pointwise = !pointwise.empty();
            const auto rec = wsie::run_solve(a);
            emit_text(solve_c.out, wsie::to_json(rec));
            if (!pointwise.empty()) emit(pointwise, [&](std::ostream& os) { wsie::write_pointwise_csv(os, rec); });
            if (!solve_c.csv.empty())
                emit(solve_c.csv, [&](std::ostream& os) { wsie::write_converge_csv(os, {rec}); });
            return 0;
        };
    });

    Common conv_c;
    std::vector<std::size_t> ns;
    bool use_table = false;
    auto* conv = app.add_subcommand("converge", "one solve per n");
    add_common(conv, conv_c);
    conv->add_option("--ns", ns, "node counts")->required()->delimiter(',');
    conv->add_flag("--table", use_table, "take (eps, rho) per n from the published rows");
    conv->callback([&] {
        action = [&] {
            const auto recs = wsie::run_converge(finish(conv_c), ns, use_table);
            if (!conv_c.out.empty() || conv_c.csv.empty()) emit_text(conv_c.out, wsie::to_json(recs, "converge"));
            if (!conv_c.csv.empty()) emit(conv_c.csv, [&](std::ostream& os) { wsie::write_converge_csv(os, recs); });
            return 0;
        };
    });

    Common sweep_c;
    double eps_min = 1e-3, eps_max = 5.0;
    std::size_t eps_count = 40;
    std::vector<double> eps_list, rhos{0.0, 1e-8};
    auto* sweep = app.add_subcommand("sweep", "(eps, rho) grid at fixed nodes");
    add_common(sweep, sweep_c);
    sweep->add_option("--eps-min", eps_min)->capture_default_str();
    sweep->add_option("--eps-max", eps_max)->capture_default_str();
    sweep->add_option("--eps-count", eps_count, "log-spaced eps values")->capture_default_str();
    sweep->add_option("--eps-list", eps_list, "explicit eps values")->delimiter(',');
    sweep->add_option("--rhos", rhos, "rho values")->delimiter(',');
    sweep->callback([&] {
        action = [&] {
            const auto eps = eps_list.empty() ? wsie::logspace(eps_min, eps_max, eps_count) : eps_list;
            const auto recs = wsie::run_sweep(finish(sweep_c), eps, rhos);
            if (!sweep_c.out.empty() || sweep_c.csv.empty()) emit_text(sweep_c.out, wsie::to_json(recs, "sweep"));
            if (!sweep_c.csv.empty()) emit(sweep_c.csv, [&](std::ostream& os) { wsie::write_sweep_csv(os, recs); });
            return 0;
        };
    });

    Common tune_c;
    wsie::PsoConfig pso;
    std::vector<double> eps_bounds, rho_bounds;
    bool linear_rho = false;
    auto* tune = app.add_subcommand("pso-tune", "search (eps, rho) minimising the maximum error");
    add_common(tune, tune_c);
    tune->add_option("--swarm", pso.swarm_size)->capture_default_str();
    tune->add_option("--iters", pso.max_iters)->capture_default_str();
    tune->add_option("--eps-bounds", eps_bounds, "min,max")->expected(2)->delimiter(',');
    tune->add_option("--rho-bounds", rho_bounds, "min,max")->expected(2)->delimiter(',');
    tune->add_flag("--linear-rho", linear_rho, "search rho linearly instead of in log10");
    tune->add_option("--mu", pso.mu)->capture_default_str();
    tune->add_option("--z0", pso.z0)->capture_default_str();
    tune->add_option("--varrho", pso.varrho)->capture_default_str();
    tune->add_option("--stall", pso.stall_limit)->capture_default_str();
    tune->add_option("--pso-seed", pso.seed)->capture_default_str();
    tune->callback([&] {
        action = [&] {
            if (eps_bounds.size() == 2) pso.eps_bounds = {eps_bounds[0], eps_bounds[1]};
            if (rho_bounds.size() == 2) pso.rho_bounds = {rho_bounds[0], rho_bounds[1]};
            pso.log_rho = !linear_rho;
            const auto rec = wsie::pso_tune(finish(tune_c), pso);
            emit_text(tune_c.out, wsie::to_json(rec));
            if (!tune_c.csv.empty())
                emit(tune_c.csv, [&](std::ostream& os) { wsie::write_history_csv(os, rec.result); });
            return 0;
        };
    });

    wsie::QuadTestArgs qa;
    bool check = false, json_out = false;
    std::string quad_out;
    auto* quad = app.add_subcommand("quad-test", "graded rule against closed-form integrals on (0, 1)");
    quad->add_option("--integrand", qa.integrand)->check(CLI::IsMember(wsie::quad_integrands()))->capture_default_str();
    quad->add_option("--ms", qa.ms)->delimiter(',');
    quad->add_option("--Ls", qa.Ls)->delimiter(',');
    quad->add_option("--sigma", qa.sigma)->capture_default_str();
    quad->add_option("--slack", qa.slack)->capture_default_str();
    quad->add_flag("--check", check, "exit 4 when the observed rate is too low");
    quad->add_flag("--json", json_out, "write JSON instead of CSV");
    quad->add_option("-o,--out", quad_out, "output file (relative to $WSIE_OUTPUT_DIR); stdout if omitted");
    quad->callback([&] {
        action = [&] {
            const auto rep = wsie::run_quad_test(qa);
            if (json_out)
                emit_text(quad_out, wsie::to_json(rep));
            else
                emit(quad_out, [&](std::ostream& os) { wsie::write_quad_csv(os, rep); });
            if (check && !rep.rate_ok) {
                std::cerr << "quad-test: observed rate below 2^(2m)/" << qa.slack << '\n';
                return kExitCheck;
            }
            return 0;
        };
    });

    std::string list_out;
    auto* list = app.add_subcommand("list-problems", "print the problem registry as JSON");
    list->add_option("-o,--out", list_out);
    list->callback([&] {
        action = [&] {
            emit_text(list_out, wsie::registry_json());
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        return action();
    } catch (const wsie::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const wsie::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const wsie::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const wsie::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitConfig;
    }
}

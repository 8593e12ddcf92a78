#include "wsie/problems.hpp"

#include "wsie/error.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace wsie {

namespace {

constexpr double kPi = std::numbers::pi;

double one(const Point&, const Point&, const Point&) { return 1.0; }

double log_distance(const Point&, const Point&, const Point& off) { return 0.5 * std::log(squared_norm(off)); }

double sinc(double z) { return z == 0.0 ? 1.0 : std::sin(z) / z; }

// ln|cos(pi x) - cos(pi t)| on [0, 1], written as
// ln 2 + ln|sin(pi (t - x) / 2)| + ln|sin(pi a / 2)| with a = min(x + t, 2 - x - t).
double cos_log_unit(const Point& x, const Point&, const Point& off) {
    const double d = off[0];
    const double sum = 2.0 * x[0] + d;
    const double a = sum <= 1.0 ? sum : 2.0 * (1.0 - x[0]) - d;
    return std::numbers::ln2 + std::log(std::abs(std::sin(0.5 * kPi * d))) + std::log(std::abs(std::sin(0.5 * kPi * a)));
}

// ln|cos x - cos t| on [0, pi].
double cos_log_pi(const Point& x, const Point&, const Point& off) {
    const double d = off[0];
    const double sum = 2.0 * x[0] + d;
    const double a = sum <= kPi ? sum : 2.0 * (kPi - x[0]) - d;
    return std::numbers::ln2 + std::log(std::abs(std::sin(0.5 * d))) + std::log(std::abs(std::sin(0.5 * a)));
}

// S_1 = ln{2 sin((x - t)/2) sin((x + t)/2) / ((x - t)(x + t)(2 pi - x - t))}.
double cos_log_smooth(const Point& x, const Point&, const Point& off) {
    const double d = off[0];
    const double b = 2.0 * x[0] + d;
    const double c = 2.0 * (kPi - x[0]) - d;
    const double tail = b <= kPi ? 0.5 * sinc(0.5 * b) / c : 0.5 * sinc(0.5 * c) / b;
    return std::numbers::ln2 + std::log(0.5 * sinc(0.5 * d)) + std::log(tail);
}

ScalarField constant(double v) {
    return [v](const Point&) { return v; };
}

TableRow row(const char* k, int n, double e, double r, double mae) { return TableRow{k, n, e, r, mae}; }

Problem ex1() {
    Problem p;
    p.key = "ex1-log-interval";
    p.domain = domain_from_key("interval01");
    p.lambda = 1.0;
    p.terms = {{log_distance, one}};
    p.rhs = [](const Point& pt) {
        const double x = pt[0];
        const double head = (x <= 0.0 || x >= 1.0) ? 0.0 : (x * x * x - x) * std::log((1.0 - x) / x);
        return head + 4.0 * x * x + 0.5 * x - 5.0 / 3.0;
    };
    p.exact = [](const Point& pt) { return 3.0 * pt[0] * pt[0] - 1.0; };
    return p;
}

const double kEx2Exact = 1.0 / (kPi * std::numbers::ln2 + 1.0);

Problem ex2() {
    Problem p;
    p.key = "ex2-cos-log";
    p.domain = domain_from_key("interval01");
    p.lambda = kPi;
    p.terms = {{cos_log_unit, one}};
    p.rhs = constant(1.0);
    p.exact = constant(kEx2Exact);
    return p;
}

Problem ex2_0pi() {
    Problem p = ex2();
    p.key = "ex2-cos-log-0pi";
    p.domain = interval_domain(0.0, kPi);
    p.domain.key = "box:0,3.141592653589793";
    p.lambda = 1.0;
    p.terms = {{cos_log_pi, one}};
    return p;
}

Problem ex2_split() {
    Problem p = ex2_0pi();
    p.key = "ex2-cos-log-split";
    p.terms = {
        {one, cos_log_smooth},
        {[](const Point&, const Point&, const Point& off) { return std::log(std::abs(off[0])); }, one},
        {[](const Point& x, const Point&, const Point& off) { return std::log(2.0 * x[0] + off[0]); }, one},
        {[](const Point& x, const Point&, const Point& off) { return std::log(2.0 * (kPi - x[0]) - off[0]); }, one},
    };
    return p;
}

Problem with_manufactured_rhs(Problem p) {
    p.rhs = manufactured_rhs(p, p.exact, default_reference_spec(p.domain.dim));
    return p;
}

Problem ex3() {
    Problem p;
    p.key = "ex3-blade-2d";
    p.domain = domain_from_key("example3-blade");
    p.terms = {{log_distance, [](const Point& x, const Point& t, const Point&) {
                    return (x[0] + x[1]) / std::sqrt(t[1] * t[1] + t[0] * t[0] + 1.0);
                }}};
    p.exact = [](const Point& x) { return std::exp(0.5 * (x[0] + x[1] - 3.0)); };
    return with_manufactured_rhs(std::move(p));
}

Problem ex4() {
    Problem p;
    p.key = "ex4-crescent-2d";
    p.domain = domain_from_key("example4-crescent");
    p.terms = {{log_distance, [](const Point& x, const Point& t, const Point&) {
                    const double a = x[0] + x[1];
                    return std::sin(a) / ((a + 2.0) * std::exp(t[0] * t[0] + t[1] * t[1]));
                }}};
    p.exact = [](const Point& x) {
        const double a = x[0] + x[1] + 1.0;
        return std::sin(a) / a;
    };
    return with_manufactured_rhs(std::move(p));
}

Problem ex5() {
    Problem p;
    p.key = "ex5-annulus-2d";
    p.domain = domain_from_key("example5-annulus");
    p.terms = {{log_distance, [](const Point& x, const Point& t, const Point&) {
                    return x[0] * (1.0 - t[0] * t[0]) / ((1.0 + x[1]) * (1.0 + t[1] * t[1]));
                }}};
    p.exact = [](const Point& x) { return std::log((x[0] * x[0] + 1.0) / (x[1] * x[1] + 1.0)); };
    return with_manufactured_rhs(std::move(p));
}

Problem ex6() {
    Problem p;
    p.key = "ex6-boxes-3d";
    p.domain = domain_from_key("example6-boxes3d");
    p.terms = {{log_distance, [](const Point& x, const Point& t, const Point&) {
                    return (t[0] + t[1] + t[2] + 1.0) / std::exp(squared_norm(x));
                }}};
    p.exact = [](const Point& x) { return 1.0 / (x[0] + x[1] + x[2] + 1.0); };
    return with_manufactured_rhs(std::move(p));
}

std::vector<ProblemEntry> build_registry() {
    std::vector<ProblemEntry> r;
    r.push_back({"ex1-log-interval", "Example 1: ln|x - t| on [0, 1], u = 3x^2 - 1", "interval01",
                 parse_kernel_spec("GA+CU"),
                 {row("GA+CU", 4, 0.05, 5.70e-8, 4.69e-5), row("GA+CU", 6, 0.24, 2.28e-8, 4.56e-6),
                  row("GA+CU", 8, 0.33, 3.67e-9, 4.29e-7), row("GA+CU", 10, 0.43, 3.96e-10, 3.34e-8),
                  row("MQ+TPS", 4, 1.63, 6.34e-8, 6.34e-4), row("MQ+TPS", 6, 1.12, 7.98e-7, 1.89e-5),
                  row("MQ+TPS", 8, 0.91, 3.67e-8, 7.90e-7), row("MQ+TPS", 10, 0.79, 4.06e-9, 1.20e-7),
                  row("GA", 4, 0.15 * std::sqrt(4.0), 0.0, 4.24e-3), row("GA", 6, 0.15 * std::sqrt(6.0), 0.0, 1.32e-4),
                  row("GA", 8, 0.15 * std::sqrt(8.0), 0.0, 6.65e-6), row("GA", 10, 0.15 * std::sqrt(10.0), 0.0, 4.57e-7)},
                 ex1});
    r.push_back({"ex2-cos-log", "Example 2: ln|cos x - cos t| mapped to [0, 1], u = 1/(pi ln 2 + 1)", "interval01",
                 parse_kernel_spec("MQ+CU"),
                 {row("MQ+CU", 4, 1.47, 9.39e-8, 4.69e-5), row("MQ+CU", 6, 1.28, 5.81e-9, 1.19e-7),
                  row("MQ+CU", 8, 0.98, 7.53e-9, 1.25e-8), row("MQ+CU", 10, 0.84, 4.78e-10, 6.44e-10),
                  row("GA+TPS", 4, 0.11, 2.69e-9, 6.34e-5), row("GA+TPS", 6, 0.19, 7.98e-8, 8.59e-7),
                  row("GA+TPS", 8, 0.25, 3.67e-8, 7.40e-8), row("GA+TPS", 10, 0.36, 9.47e-10, 1.23e-9)},
                 ex2});
    r.push_back({"ex3-blade-2d", "Example 3: blade-shaped region, u = exp((x + t - 3)/2)", "example3-blade",
                 parse_kernel_spec("GA+CU"),
                 {row("GA+CU", 11, 0.15, 5.71e-8, 1.69e-5), row("GA+CU", 21, 0.21, 7.28e-8, 4.97e-7),
                  row("GA+CU", 39, 0.39, 1.67e-9, 4.29e-8), row("GA+CU", 64, 0.53, 9.96e-10, 2.31e-9),
                  row("GA+CU", 88, 0.67, 3.73e-10, 1.02e-10), row("MQ+CU", 11, 1.27, 2.34e-8, 6.34e-5),
                  row("MQ+CU", 21, 1.08, 1.98e-8, 8.42e-7), row("MQ+CU", 39, 0.97, 4.97e-8, 8.75e-8),
                  row("MQ+CU", 64, 0.88, 3.26e-9, 7.96e-9), row("MQ+CU", 88, 0.79, 4.07e-10, 5.21e-10)},
                 ex3});
    r.push_back({"ex4-crescent-2d", "Example 4: crescent region, u = sin(x + t + 1)/(x + t + 1)", "example4-crescent",
                 parse_kernel_spec("GA+CU"),
                 {row("GA+CU", 13, 0.13, 4.37e-8, 1.07e-4), row("GA+CU", 23, 0.21, 3.77e-8, 1.43e-6),
                  row("GA+CU", 35, 0.37, 1.46e-9, 3.35e-8), row("GA+CU", 50, 0.51, 7.86e-9, 3.79e-9),
                  row("GA+CU", 69, 0.66, 7.19e-10, 4.18e-10), row("IMQ+CU", 13, 1.29, 6.39e-8, 4.75e-4),
                  row("IMQ+CU", 23, 1.23, 2.49e-8, 5.41e-6), row("IMQ+CU", 35, 1.02, 5.01e-8, 7.14e-8),
                  row("IMQ+CU", 50, 0.89, 3.26e-9, 8.43e-9), row("IMQ+CU", 69, 0.69, 4.07e-10, 9.64e-10)},
                 ex4});
    r.push_back({"ex5-annulus-2d", "Example 5: annulus, u = ln((x^2 + 1)/(t^2 + 1))", "example5-annulus",
                 parse_kernel_spec("GA+TPS"),
                 {row("GA+TPS", 14, 0.11, 1.67e-7, 5.29e-4), row("GA+TPS", 28, 0.17, 2.87e-7, 3.69e-5),
                  row("GA+TPS", 44, 0.35, 2.78e-8, 1.28e-6), row("GA+TPS", 60, 0.49, 5.47e-9, 3.78e-7),
                  row("GA+TPS", 89, 0.61, 1.17e-10, 7.41e-9), row("IMQ+TPS", 14, 1.27, 7.83e-8, 6.48e-4),
                  row("IMQ+TPS", 28, 1.04, 9.89e-8, 5.21e-5), row("IMQ+TPS", 44, 0.93, 5.71e-9, 4.21e-6),
                  row("IMQ+TPS", 60, 0.81, 7.14e-9, 5.67e-7), row("IMQ+TPS", 89, 0.75, 6.83e-10, 9.21e-9)},
                 ex5});
    r.push_back({"ex6-boxes-3d", "Example 6: union of four prisms, u = 1/(x + t + z + 1)", "example6-boxes3d",
                 parse_kernel_spec("GA+CU"),
                 {row("GA+CU", 39, 0.07, 4.77e-8, 3.27e-4), row("GA+CU", 54, 0.14, 6.34e-8, 2.61e-5),
                  row("GA+CU", 117, 0.26, 5.37e-9, 2.38e-6), row("GA+CU", 186, 0.38, 4.81e-9, 3.29e-7),
                  row("GA+CU", 330, 0.57, 2.24e-10, 2.48e-8), row("IMQ+CU", 39, 1.27, 1.18e-8, 6.24e-4),
                  row("IMQ+CU", 54, 1.04, 4.67e-8, 6.42e-5), row("IMQ+CU", 117, 0.93, 8.97e-9, 7.11e-6),
                  row("IMQ+CU", 186, 0.81, 2.97e-10, 8.63e-7), row("IMQ+CU", 330, 0.75, 4.48e-10, 9.21e-8)},
                 ex6});
    return r;
}

}  // namespace

const std::vector<ProblemEntry>& registry() {
    static const std::vector<ProblemEntry> entries = build_registry();
    return entries;
}

const std::vector<ProblemEntry>& variant_registry() {
    static const std::vector<ProblemEntry> entries = [] {
        const auto& base = registry()[1];
        ProblemEntry a = base, b = base;
        a.key = "ex2-cos-log-0pi";
        a.citation = "Example 2 on the original interval [0, pi]";
        a.domain_key = "box:0,3.141592653589793";
        a.make = ex2_0pi;
        b.key = "ex2-cos-log-split";
        b.citation = "Example 2 on [0, pi] with the kernel split into a smooth and three log terms";
        b.domain_key = a.domain_key;
        b.make = ex2_split;
        return std::vector<ProblemEntry>{a, b};
    }();
    return entries;
}

const ProblemEntry& find_problem(const std::string& key) {
    for (const auto* list : {&registry(), &variant_registry()})
        for (const auto& e : *list)
            if (e.key == key) return e;
    throw ConfigError("unknown problem '" + key + "'");
}

Problem make_problem(const std::string& key) { return find_problem(key).make(); }

std::vector<TableRow> table_rows(const ProblemEntry& entry, const std::string& kernel) {
    const auto want = parse_kernel_spec(kernel);
    std::vector<TableRow> out;
    for (const auto& r : entry.table)
        if (parse_kernel_spec(r.kernel) == want) out.push_back(r);
    return out;
}

ReferenceQuadSpec default_reference_spec(std::size_t dim) {
    if (dim <= 1) return ReferenceQuadSpec{16, 16, 0.15, false};
    if (dim == 2) return ReferenceQuadSpec{12, 14, 0.15, true};
    return ReferenceQuadSpec{6, 6, 0.15, false};
}

double reference_operator(const Problem& problem, const ScalarField& u, const Point& x, const ReferenceQuadSpec& spec) {
    return reference_integral(
        [&](const Point& t, const Point& off) { return problem.kernel(x, t, off) * u(t); }, x, problem.domain.pieces,
        spec);
}

ScalarField manufactured_rhs(const Problem& problem, ScalarField u, const ReferenceQuadSpec& spec) {
    struct Cache {
        std::mutex mu;
        std::map<Point, double> values;
    };
    auto cache = std::make_shared<Cache>();
    Problem base = problem;
    base.rhs = nullptr;
    base.exact = nullptr;
    return [cache, base = std::move(base), u = std::move(u), spec](const Point& x) {
        {
            std::lock_guard lock(cache->mu);
            if (auto it = cache->values.find(x); it != cache->values.end()) return it->second;
        }
        const double f = u(x) - base.lambda * reference_operator(base, u, x, spec);
        std::lock_guard lock(cache->mu);
        cache->values.emplace(x, f);
        return f;
    };
}

double equation_residual(const Problem& problem, const Point& x, const ReferenceQuadSpec& spec) {
    if (!problem.has_exact()) throw ConfigError("equation_residual: problem has no exact solution");
    return problem.exact(x) - problem.lambda * reference_operator(problem, problem.exact, x, spec) - problem.rhs(x);
}

}  // namespace wsie

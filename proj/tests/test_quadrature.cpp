#include "doctest.h"
#include "oracles.hpp"

#include "wsie/error.hpp"
#include "wsie/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace wsie;

namespace {

double log_distance(const Point&, const Point& off) { return 0.5 * std::log(squared_norm(off)); }

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("gauss-legendre small rules") {
    const auto g1 = gauss_legendre(1);
    CHECK(g1.nodes[0] == 0.0);
    CHECK(g1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    const auto g2 = gauss_legendre(2);
    CHECK(g2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

    const auto g3 = gauss_legendre(3);
    CHECK(std::abs(g3.nodes[1]) < 1e-16);
    CHECK(g3.nodes[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
    CHECK(g3.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
    CHECK(g3.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
    double x4 = 0.0;
    for (int k = 0; k < 3; ++k) x4 += g3.weights[k] * std::pow(g3.nodes[k], 4);
    CHECK(x4 == doctest::Approx(0.4).epsilon(1e-15));

    CHECK_THROWS_AS((void)gauss_legendre(0), ConfigError);
    CHECK_THROWS_AS((void)gauss_legendre(65), ConfigError);
}

TEST_CASE("gauss-legendre weight sum, symmetry, exactness") {
    for (int m = 1; m <= 64; ++m) {
        const auto g = gauss_legendre(m);
        double sum = 0.0;
        for (double w : g.weights) sum += w;
        CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
        for (int k = 0; k < m; ++k) {
            CHECK(g.nodes[k] == doctest::Approx(-g.nodes[m - 1 - k]).epsilon(1e-15));
            CHECK(g.weights[k] == doctest::Approx(g.weights[m - 1 - k]).epsilon(1e-13));
            if (k > 0) CHECK(g.nodes[k] > g.nodes[k - 1]);
        }
        if (m <= 12) {
            for (int deg = 0; deg <= 2 * m - 1; ++deg) {
                double q = 0.0;
                for (int k = 0; k < m; ++k) q += g.weights[k] * std::pow(g.nodes[k], deg);
                const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
                CHECK(std::abs(q - exact) < 1e-14);
            }
        }
    }
}

TEST_CASE("graded breakpoints") {
    for (int m : {1, 2, 5, 10}) {
        for (double sigma : {0.001, 0.01, 0.3, 0.51, 0.9}) {
            const GradedQuadSpec spec{m, 15, sigma};
            const double s = spec.exponent();
            CHECK(s == doctest::Approx((2.0 * m + 1.0) / (1.0 - sigma)));
            CHECK(s > 2 * m + 1);
            const auto h = spec.breakpoints();
            REQUIRE(h.size() == 16);
            CHECK(h.front() == 0.0);
            CHECK(h.back() == 1.0);
            for (std::size_t q = 1; q < h.size(); ++q) CHECK(h[q] > h[q - 1]);
            CHECK(h[1] / h[2] == doctest::Approx(std::pow(0.5, s)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS((GradedQuadSpec{10, 0, 0.01}.validate()), ConfigError);
    CHECK_THROWS_AS((GradedQuadSpec{10, 15, 1.0}.validate()), ConfigError);
    CHECK_THROWS_AS((GradedQuadSpec{10, 15, -0.1}.validate()), ConfigError);
    CHECK_THROWS_AS((GradedQuadSpec{10, 15, 0.0}.validate()), ConfigError);
}

TEST_CASE("graded rule on (0, 1)") {
    CHECK(graded_cgl_1d([](double) { return 1.0; }, {}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(graded_cgl_1d([](double) { return 1.0; }, {3, 4, 0.2}) == doctest::Approx(1.0).epsilon(1e-15));

    // Degree <= 2m - 1 is integrated exactly panel by panel.
    for (int m : {2, 3, 5}) {
        const GradedQuadSpec spec{m, 6, 0.1};
        for (int deg = 0; deg <= 2 * m - 1; ++deg) {
            const double q = graded_cgl_1d([deg](double y) { return std::pow(y, deg); }, spec);
            CHECK(std::abs(q - 1.0 / (deg + 1)) <= 1e-13);
        }
    }

    const auto rule = graded_rule({});
    for (double y : rule.nodes) CHECK(y > 0.0);
    CHECK_THROWS_AS((void)graded_cgl_1d([](double) { return std::numeric_limits<double>::quiet_NaN(); }, {}),
                    IntegrationError);
}

TEST_CASE("graded rule singular oracles at the default sizes") {
    // The literal rule at m = 10, L = 15 stops short of 1e-12 / 1e-10: its
    // outermost panel dominates the error. These values are the rule's own,
    // confirmed in 50-digit arithmetic.
    const double ln_err = graded_cgl_1d([](double y) { return std::log(y); }, {10, 15, 0.01}) + 1.0;
    CHECK(ln_err == doctest::Approx(1.6985e-10).epsilon(1e-3));
    const double rs_err = graded_cgl_1d([](double y) { return 1.0 / std::sqrt(y); }, {10, 15, 0.51}) - 2.0;
    CHECK(rs_err == doctest::Approx(-4.7169e-5).epsilon(1e-4));

    // More panels reach the stricter targets.
    CHECK(std::abs(graded_cgl_1d([](double y) { return std::log(y); }, {10, 40, 0.01}) + 1.0) < 1e-12);
    CHECK(std::abs(graded_cgl_1d([](double y) { return 1.0 / std::sqrt(y); }, {10, 200, 0.51}) - 2.0) < 1e-10);
}

TEST_CASE("graded rule asymptotic rate") {
    // error(L) / error(2L) >= 2^(2m) / 4 once L is past the pre-asymptotic range.
    auto g = [](double y) { return std::pow(y, -0.4); };
    for (int m : {2, 3}) {
        double prev = 0.0;
        for (int L : {16, 32, 64}) {
            const double err = std::abs(graded_cgl_1d(g, {m, L, 0.4}) - 1.0 / 0.6);
            if (prev > 0.0) CHECK(prev / err >= std::pow(2.0, 2 * m) / 4.0);
            prev = err;
        }
    }
}

TEST_CASE("singular interval") {
    const GradedQuadSpec spec{};
    CHECK(integrate_singular_interval([](double, double) { return 1.0; }, 0.3, spec) ==
          doctest::Approx(1.0).epsilon(1e-15));
    auto lg = [](double, double off) { return std::log(std::abs(off)); };
    CHECK(integrate_singular_interval(lg, 0.5, spec) == doctest::Approx(std::log(0.5) - 1.0).epsilon(1e-9));
    CHECK(integrate_singular_interval(lg, 0.0, spec) == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(integrate_singular_interval(lg, 1.0, spec) == doctest::Approx(-1.0).epsilon(1e-9));
    for (double x : {0.1, 0.37, 0.9}) {
        const double exact = x * std::log(x) + (1 - x) * std::log(1 - x) - 1.0;
        CHECK(integrate_singular_interval(lg, x, spec) == doctest::Approx(exact).epsilon(1e-9));
    }
    CHECK_THROWS_AS((void)integrate_singular_interval(lg, 1.5, spec), DomainError);

    const auto rule = singular_interval_rule(0.5, 0.0, 1.0, spec);
    for (std::size_t i = 0; i < rule.size(); ++i) CHECK(rule.offset(i)[0] != 0.0);
}

TEST_CASE("uniform composite rule") {
    CHECK(cgl_uniform([](double) { return 1.0; }, 0.0, 2.0, 3, 5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(cgl_uniform([](double x) { return x * x * x; }, 0.0, 1.0, 2, 1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(cgl_uniform([](double x) { return std::exp(x); }, 0.0, 1.0, 10, 4) - (std::numbers::e - 1.0)) <
          1e-14);
}

TEST_CASE("two-dimensional rule") {
    const GradedQuadSpec spec{};
    const auto square = Piece::box({{0.0, 1.0}, {0.0, 1.0}});
    CHECK(integrate_singular_2d([](const Point&, const Point&) { return 1.0; }, {0.3, 0.6}, square, spec) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(integrate_singular_2d([](const Point& t, const Point&) { return t[0] * t[1]; }, {0.25, 0.75}, square,
                                spec) == doctest::Approx(0.25).epsilon(1e-12));

    const double got = integrate_singular_2d(log_distance, {0.5, 0.5}, square, spec);
    const double ref = 4.0 * oracle::corner_log_2d(0.5, 0.5);
    CHECK(std::abs(got - ref) <= 1e-6);
    // Closed form of the same integral.
    CHECK(ref == doctest::Approx(-1.0611754268825244).epsilon(1e-10));

    const double split = integrate_singular_2d(log_distance, {0.5, 0.5}, square, spec, InnerMode::Split);
    CHECK(std::abs(split - ref) <= 1e-6);

    CHECK_THROWS_AS((void)integrate_singular_2d(log_distance, {1.5, 0.5}, square, spec), DomainError);

    const auto rule = singular_2d_rule({0.5, 0.5}, square, spec);
    for (std::size_t i = 0; i < rule.size(); ++i) CHECK(squared_norm(rule.offset(i)) > 0.0);
}

TEST_CASE("tensor rule") {
    const GradedQuadSpec spec{6, 8, 0.01};
    const std::vector<Piece> cube{Piece::box({{0, 1}, {0, 1}, {0, 1}})};
    CHECK(integrate_singular_tensor([](const Point&, const Point&) { return 1.0; }, {0.4, 0.2, 0.7}, cube, spec) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // d = 1 reduces to the interval rule.
    auto lg = [](const Point&, const Point& off) { return std::log(std::abs(off[0])); };
    const double t1 = integrate_singular_tensor(lg, Point{0.3}, {Piece::interval(0.0, 1.0)}, spec);
    const double i1 =
        integrate_singular_interval([](double, double off) { return std::log(std::abs(off)); }, 0.3, spec);
    CHECK(t1 == i1);

    const std::vector<Piece> small{Piece::box({{0, 0.3}, {0, 0.3}, {0, 0.3}})};
    const double got = integrate_singular_tensor(log_distance, {0.1, 0.1, 0.1}, small, spec);
    double ref = 0.0;
    for (double a : {0.1, 0.2})
        for (double b : {0.1, 0.2})
            for (double c : {0.1, 0.2}) ref += oracle::corner_log_3d(a, b, c);
    CHECK(std::abs(got - ref) <= 1e-5);

    CHECK_THROWS_AS((void)integrate_singular_tensor(lg, Point{0.3}, {}, spec), DomainError);
}

TEST_CASE("tensor weights sum to the box volume") {
    const GradedQuadSpec spec{4, 5, 0.01};
    const std::vector<std::vector<std::pair<double, double>>> boxes{
        {{0, 1}, {0, 1}, {0, 1}}, {{-1, 2}, {0.5, 0.75}, {0, 3}}, {{0, 0.3}, {0.2, 1.1}}, {{0.1, 0.4}}};
    for (const auto& b : boxes) {
        double vol = 1.0;
        Point x(b.size());
        for (std::size_t a = 0; a < b.size(); ++a) {
            vol *= b[a].second - b[a].first;
            x[a] = b[a].first + 0.37 * (b[a].second - b[a].first);
        }
        const auto rule = singular_tensor_rule(x, Piece::box(b), spec);
        CHECK(std::abs(rule.weight_sum() - vol) <= 1e-12 * std::max(1.0, vol));
        // Singular point outside the box is clamped onto it.
        Point far = x;
        far[0] = b[0].second + 5.0;
        CHECK(std::abs(singular_tensor_rule(far, Piece::box(b), spec).weight_sum() - vol) <= 1e-12 * std::max(1.0, vol));
    }
}

TEST_CASE("reference rule") {
    const auto square = Piece::box({{0.0, 1.0}, {0.0, 1.0}});
    const double ref = reference_integral(log_distance, {0.5, 0.5}, {square}, {});
    CHECK(std::abs(ref - 4.0 * oracle::corner_log_2d(0.5, 0.5)) <= 1e-10);
    const double one = reference_integral([](const Point&, const Point& off) { return std::log(std::abs(off[0])); },
                                          Point{0.5}, {Piece::interval(0, 1)}, {16, 16, 0.15, false});
    CHECK(one == doctest::Approx(std::log(0.5) - 1.0).epsilon(1e-13));
}

}

#include "wsie/quadrature.hpp"

#include "wsie/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wsie {

GaussRule gauss_legendre(int m) {
    if (m < 1 || m > 64) throw ConfigError("gauss_legendre: m must be in 1..64, got " + std::to_string(m));
    GaussRule rule;
    rule.m = m;
    rule.nodes.assign(static_cast<std::size_t>(m), 0.0);
    rule.weights.assign(static_cast<std::size_t>(m), 0.0);

    // Newton on P_m for the positive roots, mirrored for exact symmetry.
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
        }
        if (2 * i + 1 == m) x = 0.0;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(m - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (m == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
    }
    return rule;
}

void GradedQuadSpec::validate() const {
    if (m < 1 || m > 64) throw ConfigError("quadrature: m must be in 1..64");
    if (L < 1) throw ConfigError("quadrature: L must be positive");
    if (!(sigma > 0.0 && sigma < 1.0)) throw ConfigError("quadrature: sigma must lie in (0, 1)");
}

double GradedQuadSpec::exponent() const { return (2.0 * m + 1.0) / (1.0 - sigma); }

std::vector<double> GradedQuadSpec::breakpoints() const {
    validate();
    const double s = exponent();
    std::vector<double> h(static_cast<std::size_t>(L) + 1);
    for (int q = 0; q <= L; ++q) h[static_cast<std::size_t>(q)] = std::pow(static_cast<double>(q) / L, s);
    h.front() = 0.0;
    h.back() = 1.0;
    return h;
}

Rule1D graded_rule(const GradedQuadSpec& spec) {
    const auto h = spec.breakpoints();
    const auto gl = gauss_legendre(spec.m);
    Rule1D rule;
    rule.nodes.reserve(static_cast<std::size_t>(spec.m * spec.L));
    rule.weights.reserve(rule.nodes.capacity());
    for (std::size_t q = 1; q < h.size(); ++q) {
        const double half = 0.5 * (h[q] - h[q - 1]);
        const double mid = 0.5 * (h[q] + h[q - 1]);
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            rule.nodes.push_back(half * gl.nodes[k] + mid);
            rule.weights.push_back(gl.weights[k] * half);
        }
    }
    return rule;
}

Rule1D geometric_rule(int m, int levels, double ratio) {
    if (levels < 0) throw ConfigError("geometric rule: levels must be nonnegative");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("geometric rule: ratio must lie in (0, 1)");
    const auto gl = gauss_legendre(m);
    std::vector<double> h{0.0};
    for (int k = levels; k >= 0; --k) h.push_back(std::pow(ratio, k));
    Rule1D rule;
    for (std::size_t q = 1; q < h.size(); ++q) {
        const double half = 0.5 * (h[q] - h[q - 1]);
        const double mid = 0.5 * (h[q] + h[q - 1]);
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            rule.nodes.push_back(half * gl.nodes[k] + mid);
            rule.weights.push_back(gl.weights[k] * half);
        }
    }
    return rule;
}

namespace {

[[noreturn]] void non_finite(const char* where, const Point& node) {
    std::ostringstream os;
    os << where << ": non-finite integrand at node " << node;
    throw IntegrationError(os.str(), node);
}

}  // namespace

double graded_cgl_1d(const std::function<double(double)>& g, const GradedQuadSpec& spec) {
    const auto rule = graded_rule(spec);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = g(rule.nodes[i]);
        if (!std::isfinite(v)) non_finite("graded_cgl_1d", Point{rule.nodes[i]});
        sum += rule.weights[i] * v;
    }
    return sum;
}

double cgl_uniform(const std::function<double(double)>& g, double a, double b, int m, int panels) {
    if (panels < 1) throw ConfigError("cgl_uniform: panels must be positive");
    if (a > b) throw DomainError("cgl_uniform: need a <= b");
    const auto gl = gauss_legendre(m);
    if (a == b) return 0.0;
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (int r = 0; r < panels; ++r) {
        const double mid = a + (r + 0.5) * width;
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            const double t = 0.5 * width * gl.nodes[k] + mid;
            const double v = g(t);
            if (!std::isfinite(v)) non_finite("cgl_uniform", Point{t});
            sum += 0.5 * width * gl.weights[k] * v;
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// QuadratureRule

QuadratureRule::QuadratureRule(std::size_t dim) : dim_(dim), coords_(dim), offsets_(dim) {
    if (dim == 0 || dim > kMaxDim) throw ConfigError("quadrature rule dimension must be in 1..3");
}

void QuadratureRule::reserve(std::size_t n) {
    weights_.reserve(n);
    for (std::size_t a = 0; a < dim_; ++a) {
        coords_[a].reserve(n);
        offsets_[a].reserve(n);
    }
}

void QuadratureRule::push(const Point& t, const Point& offset, double weight) {
    weights_.push_back(weight);
    for (std::size_t a = 0; a < dim_; ++a) {
        coords_[a].push_back(t[a]);
        offsets_[a].push_back(offset[a]);
    }
}

void QuadratureRule::append(const QuadratureRule& other) {
    if (other.dim_ != dim_) throw ConfigError("cannot append quadrature rules of different dimension");
    weights_.insert(weights_.end(), other.weights_.begin(), other.weights_.end());
    for (std::size_t a = 0; a < dim_; ++a) {
        coords_[a].insert(coords_[a].end(), other.coords_[a].begin(), other.coords_[a].end());
        offsets_[a].insert(offsets_[a].end(), other.offsets_[a].begin(), other.offsets_[a].end());
    }
}

Point QuadratureRule::point(std::size_t i) const {
    Point p(dim_);
    for (std::size_t a = 0; a < dim_; ++a) p[a] = coords_[a][i];
    return p;
}

Point QuadratureRule::offset(std::size_t i) const {
    Point p(dim_);
    for (std::size_t a = 0; a < dim_; ++a) p[a] = offsets_[a][i];
    return p;
}

double QuadratureRule::weight_sum() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

double QuadratureRule::integrate(const PointIntegrand& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const Point t = point(i);
        const double v = f(t, offset(i));
        if (!std::isfinite(v)) non_finite("quadrature", t);
        sum += weights_[i] * v;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Nested rules over pieces

namespace {

enum class LevelRule { Graded, Uniform, DoubleGraded };

struct Node1D {
    double t;
    double off;
    double w;
};

struct Ingredients {
    Rule1D graded;
    GaussRule gl;
    int L = 1;
};

Ingredients make_ingredients(const GradedQuadSpec& spec) {
    return Ingredients{graded_rule(spec), gauss_legendre(spec.m), spec.L};
}

// Split at the (clamped) singular coordinate; each side mapped onto the graded rule.
void split_graded(double x, double lo, double hi, const Rule1D& g, std::vector<Node1D>& out) {
    const double c = std::clamp(x, lo, hi);
    const double base = c - x;
    const double left = c - lo;
    const double right = hi - c;
    if (left > 0.0)
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
            const double d = left * g.nodes[k];
            out.push_back({c - d, base - d, left * g.weights[k]});
        }
    if (right > 0.0)
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
            const double d = right * g.nodes[k];
            out.push_back({c + d, base + d, right * g.weights[k]});
        }
}

// As split_graded, but each side is halved and graded toward both of its ends.
void split_double_graded(double x, double lo, double hi, const Rule1D& g, std::vector<Node1D>& out) {
    const double c = std::clamp(x, lo, hi);
    const double base = c - x;
    for (const double sign : {-1.0, 1.0}) {
        const double len = sign < 0 ? c - lo : hi - c;
        if (!(len > 0.0)) continue;
        const double half = 0.5 * len;
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
            const double d = half * g.nodes[k];
            out.push_back({c + sign * d, base + sign * d, half * g.weights[k]});
        }
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
            const double d = len - half * g.nodes[k];
            const double t = sign < 0 ? lo + half * g.nodes[k] : hi - half * g.nodes[k];
            out.push_back({t, base + sign * d, half * g.weights[k]});
        }
    }
}

void uniform_panels(double x, double lo, double hi, const GaussRule& gl, int L, std::vector<Node1D>& out) {
    if (!(hi > lo)) return;
    const int panels = 1 + static_cast<int>(std::floor(L * (hi - lo)));
    const double width = (hi - lo) / panels;
    for (int r = 1; r <= panels; ++r) {
        const double mid = lo + (r - 0.5) * width;
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            const double eta = 0.5 * width * gl.nodes[k] + mid;
            out.push_back({eta, eta - x, 0.5 * width * gl.weights[k]});
        }
    }
}

template <class Visit>
void emit(const Piece& piece, const Point& x0, const std::vector<LevelRule>& rules, const Ingredients& ing,
          Visit&& visit) {
    const auto& levels = piece.levels();
    const std::size_t depth = levels.size();
    std::vector<std::vector<Node1D>> scratch(depth);
    Point t(piece.dim());
    Point off(piece.dim());

    auto recurse = [&](auto&& self, std::size_t k, double weight) -> void {
        const Level& lv = levels[k];
        const double lo = lv.lo(t);
        const double hi = lv.hi(t);
        auto& nodes = scratch[k];
        nodes.clear();
        if (hi > lo) {
            const double x = x0[lv.axis];
            switch (rules[k]) {
                case LevelRule::Graded: split_graded(x, lo, hi, ing.graded, nodes); break;
                case LevelRule::Uniform: uniform_panels(x, lo, hi, ing.gl, ing.L, nodes); break;
                case LevelRule::DoubleGraded: split_double_graded(x, lo, hi, ing.graded, nodes); break;
            }
        }
        for (const auto& nd : nodes) {
            t[lv.axis] = nd.t;
            off[lv.axis] = nd.off;
            if (k + 1 == depth)
                visit(t, off, weight * nd.w);
            else
                self(self, k + 1, weight * nd.w);
        }
    };
    recurse(recurse, 0, 1.0);
}

void check_point(const Point& x0, const Piece& piece) {
    if (x0.dim != piece.dim()) throw DomainError("singular point dimension does not match the region");
}

QuadratureRule collect(const Piece& piece, const Point& x0, const std::vector<LevelRule>& rules,
                       const Ingredients& ing) {
    QuadratureRule rule(piece.dim());
    emit(piece, x0, rules, ing, [&](const Point& t, const Point& off, double w) { rule.push(t, off, w); });
    return rule;
}

std::vector<LevelRule> rules_for_2d(InnerMode mode) {
    return {LevelRule::Graded, mode == InnerMode::Uniform ? LevelRule::Uniform : LevelRule::Graded};
}

}  // namespace

double integrate_singular_interval(const IntervalIntegrand& f, double x, const GradedQuadSpec& spec) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("integrate_singular_interval: x must lie in [0, 1]");
    const auto rule = singular_interval_rule(x, 0.0, 1.0, spec);
    return rule.integrate([&](const Point& t, const Point& off) { return f(t[0], off[0]); });
}

QuadratureRule singular_interval_rule(double x, double a, double b, const GradedQuadSpec& spec) {
    const auto ing = make_ingredients(spec);
    return collect(Piece::interval(a, b), Point{x}, {LevelRule::Graded}, ing);
}

QuadratureRule singular_2d_rule(const Point& x0, const Piece& region, const GradedQuadSpec& spec, InnerMode mode) {
    if (region.dim() != 2) throw DomainError("singular_2d_rule: region must be two-dimensional");
    check_point(x0, region);
    return collect(region, x0, rules_for_2d(mode), make_ingredients(spec));
}

QuadratureRule singular_tensor_rule(const Point& x0, const Piece& region, const GradedQuadSpec& spec) {
    check_point(x0, region);
    std::vector<LevelRule> rules(region.dim(), LevelRule::Graded);
    return collect(region, x0, rules, make_ingredients(spec));
}

double integrate_singular_2d(const PointIntegrand& f, const Point& x0, const Piece& region, const GradedQuadSpec& spec,
                             InnerMode mode) {
    if (region.dim() != 2) throw DomainError("integrate_singular_2d: region must be two-dimensional");
    check_point(x0, region);
    const auto [a, b] = region.outer_range();
    const double xo = x0[region.levels().front().axis];
    if (xo < a || xo > b) throw DomainError("integrate_singular_2d: singular point outside the outer range");
    return singular_2d_rule(x0, region, spec, mode).integrate(f);
}

double integrate_singular_tensor(const PointIntegrand& f, const Point& x0, const std::vector<Piece>& region,
                                 const GradedQuadSpec& spec) {
    if (region.empty()) throw DomainError("integrate_singular_tensor: empty region");
    double sum = 0.0;
    for (const auto& piece : region) sum += singular_tensor_rule(x0, piece, spec).integrate(f);
    return sum;
}

QuadratureRule domain_rule(const std::vector<Piece>& pieces, const Point& x0, const GradedQuadSpec& spec,
                           InnerMode mode) {
    if (pieces.empty()) throw DomainError("domain_rule: empty region");
    const auto ing = make_ingredients(spec);
    const std::size_t d = pieces.front().dim();
    QuadratureRule rule(d);
    for (const auto& piece : pieces) {
        check_point(x0, piece);
        std::vector<LevelRule> rules(d, LevelRule::Graded);
        if (d == 2) rules = rules_for_2d(mode);
        emit(piece, x0, rules, ing, [&](const Point& t, const Point& off, double w) { rule.push(t, off, w); });
    }
    return rule;
}

double reference_integral(const PointIntegrand& f, const Point& x0, const std::vector<Piece>& pieces,
                          const ReferenceQuadSpec& spec) {
    if (pieces.empty()) throw DomainError("reference_integral: empty region");
    const Ingredients ing{geometric_rule(spec.m, spec.levels, spec.ratio), gauss_legendre(spec.m), 1};
    double sum = 0.0;
    for (const auto& piece : pieces) {
        check_point(x0, piece);
        std::vector<LevelRule> rules(piece.dim(), spec.grade_far_ends ? LevelRule::DoubleGraded : LevelRule::Graded);
        emit(piece, x0, rules, ing, [&](const Point& t, const Point& off, double w) {
            const double v = f(t, off);
            if (!std::isfinite(v)) non_finite("reference_integral", t);
            sum += w * v;
        });
    }
    return sum;
}

}  // namespace wsie

#include "wsie/geometry.hpp"

#include "wsie/error.hpp"
#include "wsie/quadrature.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace wsie {

namespace {

constexpr double kMemberTol = 1e-12;

double sqrt0(double v) { return std::sqrt(std::max(v, 0.0)); }

double blade_half_width(double s) { return 0.25 * sqrt0(3.0 * s * (3.0 * s - 3.0) * (3.0 * s - 3.0)); }

std::vector<Point> linspace_grid(const std::vector<std::pair<double, double>>& bbox, int k) {
    const std::size_t d = bbox.size();
    std::size_t total = 1;
    for (std::size_t a = 0; a < d; ++a) total *= static_cast<std::size_t>(k);
    std::vector<Point> out;
    out.reserve(total);
    std::vector<int> idx(d, 0);
    for (std::size_t c = 0; c < total; ++c) {
        Point p(d);
        std::size_t rem = c;
        for (std::size_t a = 0; a < d; ++a) {
            const int i = static_cast<int>(rem % static_cast<std::size_t>(k));
            rem /= static_cast<std::size_t>(k);
            const auto [lo, hi] = bbox[a];
            p[a] = (i == k - 1) ? hi : lo + (hi - lo) * i / (k - 1);
        }
        out.push_back(p);
    }
    return out;
}

double parse_number(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("invalid number in domain key: '" + text + "'");
    }
    if (used != text.size()) throw ConfigError("invalid number in domain key: '" + text + "'");
    return v;
}

}  // namespace

bool Domain::contains(const Point& p) const {
    if (p.dim != dim) return false;
    return inside(p);
}

double Domain::measure() const {
    Point centre(dim);
    for (std::size_t a = 0; a < dim; ++a) centre[a] = 0.5 * (bbox[a].first + bbox[a].second);
    const ReferenceQuadSpec spec{8, 3, 0.15, dim < 3};
    return reference_integral([](const Point&, const Point&) { return 1.0; }, centre, pieces, spec);
}

Domain interval_domain(double a, double b) {
    Domain d;
    d.key = "interval";
    d.dim = 1;
    d.pieces = {Piece::interval(a, b)};
    d.inside = [a, b](const Point& p) { return p[0] >= a - kMemberTol && p[0] <= b + kMemberTol; };
    d.bbox = {{a, b}};
    return d;
}

Domain box_domain(const std::vector<std::pair<double, double>>& extents) {
    if (extents.empty() || extents.size() > kMaxDim) throw ConfigError("box domain needs 1..3 extents");
    Domain d;
    d.key = "box";
    d.dim = extents.size();
    d.pieces = {Piece::box(extents)};
    d.inside = [extents](const Point& p) {
        for (std::size_t a = 0; a < extents.size(); ++a)
            if (p[a] < extents[a].first - kMemberTol || p[a] > extents[a].second + kMemberTol) return false;
        return true;
    };
    d.bbox = extents;
    return d;
}

namespace {

// Coordinates (y, s); s runs first, y between the two blade curves.
Domain example3_blade() {
    Domain d;
    d.key = "example3-blade";
    d.dim = 2;
    d.pieces = {Piece::type_one(
        1, 0.0, 1.0, [](double s) { return 0.5 - blade_half_width(s); },
        [](double s) { return 0.5 + blade_half_width(s); })};
    d.inside = [](const Point& p) {
        const double y = p[0], s = p[1];
        if (s < -kMemberTol || s > 1.0 + kMemberTol) return false;
        return std::abs(y - 0.5) <= blade_half_width(std::clamp(s, 0.0, 1.0)) + kMemberTol;
    };
    d.bbox = {{0.0, 1.0}, {0.0, 1.0}};
    return d;
}

// Coordinates (s, t); t runs first, s between the circle and the ellipse.
Domain example4_crescent() {
    Domain d;
    d.key = "example4-crescent";
    d.dim = 2;
    d.pieces = {Piece::type_one(
        1, 0.0, 1.0, [](double t) { return sqrt0(0.25 - (t - 0.5) * (t - 0.5)); },
        [](double t) { return sqrt0(1.0 - 4.0 * (t - 0.5) * (t - 0.5)); })};
    d.inside = [](const Point& p) {
        const double s = p[0], t = p[1];
        if (t < -kMemberTol || t > 1.0 + kMemberTol || s < -kMemberTol) return false;
        const double c = (t - 0.5) * (t - 0.5);
        return s * s + c >= 0.25 - kMemberTol && s * s + 4.0 * c <= 1.0 + kMemberTol;
    };
    d.bbox = {{0.0, 1.0}, {0.0, 1.0}};
    return d;
}

// Coordinates (y, s); four y-first pieces around the hole.
Domain example5_annulus() {
    Domain d;
    d.key = "example5-annulus";
    d.dim = 2;
    auto outer = [](double y) { return sqrt0(0.25 - (y - 0.5) * (y - 0.5)); };
    auto inner = [](double y) { return sqrt0(0.04 - (y - 0.5) * (y - 0.5)); };
    d.pieces = {
        Piece::type_one(0, 0.0, 0.3, [=](double y) { return 0.5 - outer(y); }, [=](double y) { return 0.5 + outer(y); }),
        Piece::type_one(0, 0.3, 0.7, [=](double y) { return 0.5 - outer(y); }, [=](double y) { return 0.5 - inner(y); }),
        Piece::type_one(0, 0.3, 0.7, [=](double y) { return 0.5 + inner(y); }, [=](double y) { return 0.5 + outer(y); }),
        Piece::type_one(0, 0.7, 1.0, [=](double y) { return 0.5 - outer(y); }, [=](double y) { return 0.5 + outer(y); }),
    };
    d.inside = [](const Point& p) {
        const double r2 = (p[0] - 0.5) * (p[0] - 0.5) + (p[1] - 0.5) * (p[1] - 0.5);
        return r2 <= 0.25 + kMemberTol && r2 >= 0.04 - kMemberTol;
    };
    d.bbox = {{0.0, 1.0}, {0.0, 1.0}};
    return d;
}

// Coordinates (y, s, r); r outermost, then s (possibly slanted), then y.
Domain example6_boxes() {
    Domain d;
    d.key = "example6-boxes3d";
    d.dim = 3;
    auto c = [](double v) { return [v](const Point&) { return v; }; };
    auto piece = [&](double r0, double r1, BoundFn slo, BoundFn shi) {
        return Piece(3, {Level{2, c(r0), c(r1)}, Level{1, std::move(slo), std::move(shi)}, Level{0, c(0.0), c(0.3)}});
    };
    d.pieces = {
        piece(0.0, 0.3, c(0.0), c(0.9)),
        piece(0.3, 0.6, [](const Point& p) { return 0.9 - p[2]; }, [](const Point& p) { return 1.2 - p[2]; }),
        piece(0.6, 0.9, [](const Point& p) { return p[2] - 0.3; }, [](const Point& p) { return p[2]; }),
        piece(0.9, 1.2, c(0.0), c(0.9)),
    };
    d.inside = [](const Point& p) {
        const double y = p[0], s = p[1], r = p[2];
        constexpr double e = kMemberTol;
        if (y < -e || y > 0.3 + e) return false;
        auto between = [](double v, double lo, double hi) { return v >= lo - e && v <= hi + e; };
        return (between(r, 0.0, 0.3) && between(s, 0.0, 0.9)) ||
               (between(r, 0.3, 0.6) && between(s, 0.9 - r, 1.2 - r)) ||
               (between(r, 0.6, 0.9) && between(s, r - 0.3, r)) || (between(r, 0.9, 1.2) && between(s, 0.0, 0.9));
    };
    d.bbox = {{0.0, 0.3}, {0.0, 0.9}, {0.0, 1.2}};
    return d;
}

}  // namespace

Domain domain_from_key(const std::string& key) {
    if (key == "interval01") {
        auto d = interval_domain(0.0, 1.0);
        d.key = key;
        return d;
    }
    if (key == "example3-blade") return example3_blade();
    if (key == "example4-crescent") return example4_crescent();
    if (key == "example5-annulus") return example5_annulus();
    if (key == "example6-boxes3d") return example6_boxes();
    if (key.rfind("box:", 0) == 0) {
        std::vector<std::pair<double, double>> ext;
        std::stringstream ss(key.substr(4));
        std::string item;
        while (std::getline(ss, item, ';')) {
            const auto comma = item.find(',');
            if (comma == std::string::npos) throw ConfigError("box extent needs 'lo,hi': '" + item + "'");
            ext.emplace_back(parse_number(item.substr(0, comma)), parse_number(item.substr(comma + 1)));
        }
        auto d = box_domain(ext);
        d.key = key;
        return d;
    }
    throw ConfigError("unknown domain key '" + key + "'");
}

std::vector<std::string> domain_keys() {
    return {"interval01", "example3-blade", "example4-crescent", "example5-annulus", "example6-boxes3d"};
}

std::string to_string(NodeStrategy s) {
    switch (s) {
        case NodeStrategy::Equispaced: return "equispaced";
        case NodeStrategy::Halton: return "halton";
        case NodeStrategy::GridFiltered: return "grid-filtered";
    }
    return "?";
}

NodeStrategy parse_node_strategy(const std::string& text) {
    std::string t;
    for (char ch : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (t == "equispaced") return NodeStrategy::Equispaced;
    if (t == "halton") return NodeStrategy::Halton;
    if (t == "grid-filtered" || t == "grid") return NodeStrategy::GridFiltered;
    throw ConfigError("unknown node strategy '" + text + "'");
}

double halton(std::uint64_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

double fill_distance(const std::vector<Point>& nodes, const std::vector<Point>& probes) {
    if (probes.empty()) throw DomainError("fill_distance: empty probe set");
    if (nodes.empty()) throw DomainError("fill_distance: empty node set");
    double worst = 0.0;
    for (const auto& p : probes) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& x : nodes) best = std::min(best, squared_distance(p, x));
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

double separation_distance(const std::vector<Point>& nodes) {
    if (nodes.size() < 2) throw DataError("separation_distance: need at least two nodes");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) best = std::min(best, squared_distance(nodes[i], nodes[j]));
    if (best == 0.0) throw DataError("separation_distance: duplicate nodes");
    return 0.5 * std::sqrt(best);
}

std::vector<Point> evaluation_grid(const Domain& domain, int resolution) {
    if (resolution < 2) throw ConfigError("evaluation grid resolution must be at least 2");
    auto grid = linspace_grid(domain.bbox, resolution);
    std::vector<Point> out;
    out.reserve(grid.size());
    for (const auto& p : grid)
        if (domain.contains(p)) out.push_back(p);
    return out;
}

std::vector<Point> probe_grid(const Domain& domain) {
    static constexpr int kProbes[] = {0, 10001, 201, 41};
    return evaluation_grid(domain, kProbes[domain.dim]);
}

NodeSet make_node_set(std::vector<Point> points, const Domain& domain) {
    for (const auto& p : points)
        if (!domain.contains(p)) {
            std::ostringstream os;
            os << "node " << p << " lies outside domain " << domain.key;
            throw DomainError(os.str());
        }
    NodeSet ns;
    ns.separation = separation_distance(points);
    ns.fill = fill_distance(points, probe_grid(domain));
    ns.points = std::move(points);
    return ns;
}

NodeSet generate_nodes(const Domain& domain, std::size_t n, NodeStrategy strategy, std::uint64_t seed) {
    if (n < 2) throw ConfigError("at least two collocation nodes are required");
    const std::size_t d = domain.dim;
    std::vector<Point> pts;
    pts.reserve(n);

    switch (strategy) {
        case NodeStrategy::Equispaced: {
            if (d != 1) throw ConfigError("equispaced nodes are only available in one dimension");
            const auto [a, b] = domain.bbox.front();
            for (std::size_t i = 0; i < n; ++i)
                pts.push_back(Point{i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1)});
            break;
        }
        case NodeStrategy::Halton: {
            static constexpr unsigned kBases[] = {2, 3, 5};
            constexpr std::uint64_t kMaxDraws = 10'000'000;
            std::set<Point> seen;
            for (std::uint64_t k = seed + 1; pts.size() < n; ++k) {
                if (k - seed > kMaxDraws) throw GenerationError("halton: could not place the requested nodes");
                Point p(d);
                for (std::size_t a = 0; a < d; ++a) {
                    const auto [lo, hi] = domain.bbox[a];
                    p[a] = lo + (hi - lo) * halton(k, kBases[a]);
                }
                if (domain.contains(p) && seen.insert(p).second) pts.push_back(p);
            }
            break;
        }
        case NodeStrategy::GridFiltered: {
            constexpr std::size_t kMaxGridPoints = 4'000'000;
            std::vector<Point> admissible;
            for (int k = 2;; ++k) {
                std::size_t total = 1;
                for (std::size_t a = 0; a < d; ++a) total *= static_cast<std::size_t>(k);
                if (total > kMaxGridPoints) throw GenerationError("grid-filtered: domain too thin for the grid");
                admissible = evaluation_grid(domain, k);
                if (admissible.size() >= n) break;
            }
            const std::size_t count = admissible.size();
            for (std::size_t i = 0; i < n; ++i) pts.push_back(admissible[i * count / n]);
            break;
        }
    }
    return make_node_set(std::move(pts), domain);
}

void write_points_csv(std::ostream& os, const std::vector<Point>& points) {
    const std::size_t d = points.empty() ? 1 : points.front().dim;
    for (std::size_t a = 0; a < d; ++a) os << (a ? "," : "") << 'x' << a;
    os << '\n';
    os.precision(17);
    for (const auto& p : points) {
        for (std::size_t a = 0; a < d; ++a) os << (a ? "," : "") << p[a];
        os << '\n';
    }
}

}  // namespace wsie

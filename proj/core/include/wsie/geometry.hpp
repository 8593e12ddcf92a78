#pragma once

#include "wsie/point.hpp"
#include "wsie/region.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace wsie {

/// Integration domain: a union of nested pieces plus a closed membership test.
///
/// The pieces drive quadrature; membership uses the original inequalities of
/// the domain so node filtering does not depend on the decomposition.
struct Domain {
    std::string key;
    std::size_t dim = 1;
    std::vector<Piece> pieces;
    std::function<bool(const Point&)> inside;
    std::vector<std::pair<double, double>> bbox;

    [[nodiscard]] bool contains(const Point& p) const;
    /// Lebesgue measure, from a quadrature of 1 over the pieces.
    [[nodiscard]] double measure() const;
};

[[nodiscard]] Domain interval_domain(double a, double b);
[[nodiscard]] Domain box_domain(const std::vector<std::pair<double, double>>& extents);

/// Registry keys: interval01, example3-blade, example4-crescent,
/// example5-annulus, example6-boxes3d, and "box:a,b;c,d;..." for products.
[[nodiscard]] Domain domain_from_key(const std::string& key);
[[nodiscard]] std::vector<std::string> domain_keys();

enum class NodeStrategy { Equispaced, Halton, GridFiltered };

[[nodiscard]] std::string to_string(NodeStrategy s);
[[nodiscard]] NodeStrategy parse_node_strategy(const std::string& text);

/// Collocation nodes with their regularity measures.
struct NodeSet {
    std::vector<Point> points;
    double fill = 0.0;        ///< h_{X, Omega} against a dense probe grid
    double separation = 0.0;  ///< q_X

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return points.empty() ? 0 : points.front().dim; }
    [[nodiscard]] double quasi_uniformity() const { return fill / separation; }
};

/// Wraps given points; fill distance is measured on the domain's probe grid.
[[nodiscard]] NodeSet make_node_set(std::vector<Point> points, const Domain& domain);

/// Exactly n distinct nodes inside the domain. Equispaced is 1D only and
/// includes both endpoints; halton uses bases 2, 3, 5 starting at index
/// seed + 1; grid-filtered takes the coarsest closed grid with at least n
/// admissible points and keeps an evenly strided subset.
[[nodiscard]] NodeSet generate_nodes(const Domain& domain, std::size_t n, NodeStrategy strategy,
                                     std::uint64_t seed = 0);

/// max over probes of the distance to the nearest node.
[[nodiscard]] double fill_distance(const std::vector<Point>& nodes, const std::vector<Point>& probes);

/// Half the minimal pairwise distance. Throws DataError on duplicates.
[[nodiscard]] double separation_distance(const std::vector<Point>& nodes);

/// resolution^d closed grid over the bounding box, filtered by membership;
/// `resolution` equispaced points for d = 1.
[[nodiscard]] std::vector<Point> evaluation_grid(const Domain& domain, int resolution);

/// Dense probe set used for fill distances.
[[nodiscard]] std::vector<Point> probe_grid(const Domain& domain);

/// Radical inverse of `index` in `base`.
[[nodiscard]] double halton(std::uint64_t index, unsigned base);

/// One point per row, comma separated, with a header x0,x1,...
void write_points_csv(std::ostream& os, const std::vector<Point>& points);

}  // namespace wsie

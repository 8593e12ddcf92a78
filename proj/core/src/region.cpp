#include "wsie/region.hpp"

#include "wsie/error.hpp"

namespace wsie {

Piece::Piece(std::size_t dim, std::vector<Level> levels) : dim_(dim), levels_(std::move(levels)) {
    if (dim_ == 0 || dim_ > kMaxDim) throw ConfigError("piece dimension must be in 1..3");
    if (levels_.size() != dim_) throw ConfigError("piece needs one level per coordinate");
    std::vector<bool> seen(dim_, false);
    for (const auto& lv : levels_) {
        if (lv.axis >= dim_ || seen[lv.axis]) throw ConfigError("piece levels must cover each axis once");
        if (!lv.lo || !lv.hi) throw ConfigError("piece level without bounds");
        seen[lv.axis] = true;
    }
}

Piece Piece::interval(double a, double b) {
    if (!(a < b)) throw ConfigError("interval needs a < b");
    return Piece(1, {Level{0, [a](const Point&) { return a; }, [b](const Point&) { return b; }}});
}

Piece Piece::box(const std::vector<std::pair<double, double>>& extents) {
    std::vector<Level> levels;
    for (std::size_t k = 0; k < extents.size(); ++k) {
        const auto [a, b] = extents[k];
        if (!(a < b)) throw ConfigError("box extent needs lo < hi");
        levels.push_back(Level{k, [a = a](const Point&) { return a; }, [b = b](const Point&) { return b; }});
    }
    return Piece(extents.size(), std::move(levels));
}

Piece Piece::type_one(std::size_t outer_axis, double a, double b, std::function<double(double)> lower,
                      std::function<double(double)> upper) {
    if (outer_axis > 1) throw ConfigError("type-I outer axis must be 0 or 1");
    if (!(a < b)) throw ConfigError("type-I region needs a < b");
    const std::size_t inner = 1 - outer_axis;
    std::vector<Level> levels;
    levels.push_back(Level{outer_axis, [a](const Point&) { return a; }, [b](const Point&) { return b; }});
    levels.push_back(Level{inner,
                           [lower = std::move(lower), outer_axis](const Point& p) { return lower(p[outer_axis]); },
                           [upper = std::move(upper), outer_axis](const Point& p) { return upper(p[outer_axis]); }});
    return Piece(2, std::move(levels));
}

std::pair<double, double> Piece::outer_range() const {
    Point p(dim_);
    return {levels_.front().lo(p), levels_.front().hi(p)};
}

bool Piece::contains(const Point& p, double tol) const {
    if (p.dim != dim_) return false;
    for (const auto& lv : levels_) {
        const double v = p[lv.axis];
        if (v < lv.lo(p) - tol || v > lv.hi(p) + tol) return false;
    }
    return true;
}

}  // namespace wsie

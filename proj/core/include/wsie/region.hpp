#pragma once

#include "wsie/point.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace wsie {

/// Bound of one integration level as a function of the coordinates fixed by
/// the enclosing levels (the remaining coordinates of the argument are unset).
using BoundFn = std::function<double(const Point&)>;

/// One level of an iterated integral: coordinate `axis` runs over [lo, hi].
struct Level {
    std::size_t axis = 0;
    BoundFn lo;
    BoundFn hi;
};

/// A region written as an iterated integral, outermost level first.
///
/// An interval is one level, a type-I region {a <= y <= b, a1(y) <= s <= a2(y)}
/// is two levels, a box is d levels with constant bounds. Regions given
/// "s-first" simply list axis 1 before axis 0.
class Piece {
public:
    Piece(std::size_t dim, std::vector<Level> levels);

    [[nodiscard]] static Piece interval(double a, double b);
    [[nodiscard]] static Piece box(const std::vector<std::pair<double, double>>& extents);

    /// Two-dimensional type-I region. `outer_axis` is 0 for y-first
    /// descriptions and 1 when the variables are commuted.
    [[nodiscard]] static Piece type_one(std::size_t outer_axis, double a, double b,
                                        std::function<double(double)> lower,
                                        std::function<double(double)> upper);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<Level>& levels() const noexcept { return levels_; }

    /// Range [lo, hi] of the outermost level.
    [[nodiscard]] std::pair<double, double> outer_range() const;

    /// Closed membership with absolute tolerance `tol`.
    [[nodiscard]] bool contains(const Point& p, double tol = 1e-12) const;

private:
    std::size_t dim_;
    std::vector<Level> levels_;
};

}  // namespace wsie

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>

namespace wsie {

inline constexpr std::size_t kMaxDim = 3;

/// A point in R^d for d <= kMaxDim. Unused trailing coordinates stay zero.
struct Point {
    std::array<double, kMaxDim> x{};
    std::size_t dim = 1;

    Point() = default;
    explicit Point(std::size_t d) : dim(d) {}
    Point(std::initializer_list<double> coords) : dim(coords.size()) {
        std::size_t i = 0;
        for (double c : coords) x[i++] = c;
    }

    double operator[](std::size_t i) const { return x[i]; }
    double& operator[](std::size_t i) { return x[i]; }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.dim != b.dim) return false;
        for (std::size_t i = 0; i < a.dim; ++i)
            if (a.x[i] != b.x[i]) return false;
        return true;
    }

    // Lexicographic, used for caches keyed by point.
    friend bool operator<(const Point& a, const Point& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        for (std::size_t i = 0; i < a.dim; ++i)
            if (a.x[i] != b.x[i]) return a.x[i] < b.x[i];
        return false;
    }
};

inline double squared_norm(const Point& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.dim; ++i) s += p.x[i] * p.x[i];
    return s;
}

inline double squared_distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim; ++i) {
        const double d = a.x[i] - b.x[i];
        s += d * d;
    }
    return s;
}

inline double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

inline std::ostream& operator<<(std::ostream& os, const Point& p) {
    os << '(';
    for (std::size_t i = 0; i < p.dim; ++i) os << (i ? ", " : "") << p.x[i];
    return os << ')';
}

}  // namespace wsie

#pragma once

// Independent reference integrals for the quadrature tests.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

namespace oracle {

// int_0^a int_0^b 0.5 ln(u^2 + v^2) dv du, singular at the origin corner.
inline double corner_log_2d(double a, double b) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto inner = [&](double u) {
        return ts.integrate([u](double v) { return std::log(std::hypot(u, v)); }, 0.0, b);
    };
    return ts.integrate(inner, 0.0, a);
}

// int over [0,a]x[0,b]x[0,c] of 0.5 ln(u^2 + v^2 + w^2), singular at the origin corner.
inline double corner_log_3d(double a, double b, double c) {
    boost::math::quadrature::tanh_sinh<double> ts(12);
    auto mid = [&](double u) {
        auto inner = [&](double v) {
            const double uv = std::hypot(u, v);
            return ts.integrate([uv](double w) { return std::log(std::hypot(uv, w)); }, 0.0, c);
        };
        return ts.integrate(inner, 0.0, b);
    };
    return ts.integrate(mid, 0.0, a);
}

}  // namespace oracle

#pragma once

#include "wsie/point.hpp"
#include "wsie/region.hpp"

#include <functional>
#include <vector>

namespace wsie {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
    int m = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes and weights of the m-point Gauss-Legendre rule, 1 <= m <= 64.
[[nodiscard]] GaussRule gauss_legendre(int m);

/// Graded composite Gauss-Legendre rule on (0, 1) for integrands with a weak
/// singularity at 0: L panels with breakpoints h_q = (q/L)^s and
/// s = (2m + 1) / (1 - sigma), m points per panel.
struct GradedQuadSpec {
    int m = 10;
    int L = 15;
    double sigma = 0.01;

    void validate() const;
    [[nodiscard]] double exponent() const;
    [[nodiscard]] std::vector<double> breakpoints() const;
};

/// The graded rule as explicit nodes/weights on (0, 1), panel by panel.
struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

[[nodiscard]] Rule1D graded_rule(const GradedQuadSpec& spec);

/// Sum_q Sum_k w_k (dh_q / 2) g(theta_k^q). g is never evaluated at 0.
/// Throws IntegrationError on a non-finite value of g.
[[nodiscard]] double graded_cgl_1d(const std::function<double(double)>& g, const GradedQuadSpec& spec);

/// Composite m-point Gauss-Legendre over `panels` equal subintervals of [a, b].
[[nodiscard]] double cgl_uniform(const std::function<double(double)>& g, double a, double b, int m, int panels);

/// Integrand of a singular integral in t. The second argument is the offset
/// t - x computed from local coordinates, so it stays exact (and nonzero)
/// where t itself rounds to x.
using IntervalIntegrand = std::function<double(double t, double offset)>;
using PointIntegrand = std::function<double(const Point& t, const Point& offset)>;

/// int_0^1 F(t) dt for F singular at t = x, split at x and mapped onto the
/// graded rule on both sides. A vanishing side (x = 0 or x = 1) is skipped.
[[nodiscard]] double integrate_singular_interval(const IntervalIntegrand& f, double x, const GradedQuadSpec& spec);

/// How the inner variable of a two-dimensional region is integrated.
enum class InnerMode {
    Uniform,  ///< composite rule on 1 + floor(L (a2 - a1)) equal panels
    Split,    ///< additionally split at the singular coordinate and graded
};

/// A materialised quadrature rule: nodes, offsets from the singular point and
/// weights (Jacobians included). Coordinates are stored per axis.
class QuadratureRule {
public:
    explicit QuadratureRule(std::size_t dim = 1);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    [[nodiscard]] bool empty() const noexcept { return weights_.empty(); }

    void reserve(std::size_t n);
    void push(const Point& t, const Point& offset, double weight);
    void append(const QuadratureRule& other);

    [[nodiscard]] Point point(std::size_t i) const;
    [[nodiscard]] Point offset(std::size_t i) const;
    [[nodiscard]] double weight(std::size_t i) const { return weights_[i]; }
    [[nodiscard]] const std::vector<double>& coords(std::size_t axis) const { return coords_[axis]; }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }

    [[nodiscard]] double weight_sum() const;

    /// Sum_i w_i F(t_i, t_i - x0) in node order. Throws IntegrationError on a
    /// non-finite integrand value.
    [[nodiscard]] double integrate(const PointIntegrand& f) const;

private:
    std::size_t dim_;
    std::vector<double> weights_;
    std::vector<std::vector<double>> coords_;
    std::vector<std::vector<double>> offsets_;
};

/// 1D rule on [a, b] split at x (clamped into [a, b]).
[[nodiscard]] QuadratureRule singular_interval_rule(double x, double a, double b, const GradedQuadSpec& spec);

/// Double composite rule over a two-dimensional type-I piece: the outer
/// variable is split at the singular coordinate and graded, the inner one uses
/// equispaced panels (or is split as well for InnerMode::Split).
/// The singular coordinate is clamped into the outer range.
[[nodiscard]] QuadratureRule singular_2d_rule(const Point& x0, const Piece& region, const GradedQuadSpec& spec,
                                              InnerMode mode = InnerMode::Uniform);

/// Tensor rule: every level split at the (clamped) singular coordinate and
/// graded on both sides.
[[nodiscard]] QuadratureRule singular_tensor_rule(const Point& x0, const Piece& region, const GradedQuadSpec& spec);

/// As singular_2d_rule, but requires the singular point's outer coordinate to
/// lie in the region's outer range (DomainError otherwise).
[[nodiscard]] double integrate_singular_2d(const PointIntegrand& f, const Point& x0, const Piece& region,
                                           const GradedQuadSpec& spec, InnerMode mode = InnerMode::Uniform);

/// Sum of tensor-rule integrals over a union of pieces. Throws DomainError for
/// an empty union.
[[nodiscard]] double integrate_singular_tensor(const PointIntegrand& f, const Point& x0,
                                               const std::vector<Piece>& region, const GradedQuadSpec& spec);

/// Production rule for a union of pieces, chosen by dimension: the split
/// interval rule for d = 1, the double rule for d = 2, the tensor rule above.
[[nodiscard]] QuadratureRule domain_rule(const std::vector<Piece>& pieces, const Point& x0, const GradedQuadSpec& spec,
                                         InnerMode mode = InnerMode::Uniform);

/// High-accuracy rule used to manufacture right-hand sides: every level is
/// split at the singular coordinate and each side is integrated on a
/// geometric mesh with breakpoints ratio^k (k = levels..0) toward the
/// singular point and, optionally, toward the far end of the side as well,
/// which also resolves square-root behaviour of curved bounds.
struct ReferenceQuadSpec {
    int m = 12;
    int levels = 14;
    double ratio = 0.15;
    bool grade_far_ends = true;
};

/// Geometric composite Gauss-Legendre rule on (0, 1) refined toward 0.
[[nodiscard]] Rule1D geometric_rule(int m, int levels, double ratio);

/// Streams the reference rule (no materialisation) and sums F over it.
[[nodiscard]] double reference_integral(const PointIntegrand& f, const Point& x0, const std::vector<Piece>& pieces,
                                        const ReferenceQuadSpec& spec);

}  // namespace wsie

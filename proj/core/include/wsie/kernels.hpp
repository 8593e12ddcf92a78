#pragma once

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace wsie {

/// Radial kernels of a single distance argument.
/// GA, MQ and IMQ are infinitely smooth and take a shape parameter;
/// TPS and CU are piecewise smooth and take none.
enum class RadialKernelId { GA, MQ, IMQ, TPS, CU };

[[nodiscard]] constexpr bool is_smooth(RadialKernelId id) noexcept {
    return id == RadialKernelId::GA || id == RadialKernelId::MQ || id == RadialKernelId::IMQ;
}

[[nodiscard]] std::string_view to_string(RadialKernelId id) noexcept;

/// Case-insensitive; throws ConfigError for unknown names.
[[nodiscard]] RadialKernelId parse_radial_kernel(std::string_view name);

/// Evaluates one radial kernel at distance r >= 0.
///
/// The shape parameter must be present exactly when the kernel is smooth.
/// TPS uses the natural logarithm and takes the value 0 at r = 0.
/// Throws DomainError for r < 0 and ConfigError for a misplaced epsilon.
[[nodiscard]] double eval_radial(RadialKernelId id, std::optional<double> epsilon, double r);

/// Which kernels are combined: "GA+CU", a bare smooth kernel "GA", or a bare
/// piecewise-smooth kernel "CU".
struct KernelSpec {
    std::optional<RadialKernelId> smooth;
    std::optional<RadialKernelId> rough;

    [[nodiscard]] std::string to_string() const;
    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

/// Parses "<smooth>+<rough>" or a single kernel name, case-insensitively.
[[nodiscard]] KernelSpec parse_kernel_spec(std::string_view text);

/// psi(r) = Phi^eps(r) + rho * phi(r).
///
/// A spec without a smooth part is the pure piecewise-smooth kernel phi(r)
/// (rho is ignored); a spec without a rough part is the pure smooth kernel.
class HybridKernel {
public:
    HybridKernel(KernelSpec spec, double epsilon, double rho);

    [[nodiscard]] const KernelSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
    [[nodiscard]] double rho() const noexcept { return rho_; }
    [[nodiscard]] std::string name() const { return spec_.to_string(); }

    /// psi at distance r; throws DomainError for r < 0.
    [[nodiscard]] double operator()(double r) const;

    /// psi evaluated from squared distances. No argument checks; this is the
    /// hot path of matrix assembly.
    void eval_squared(const Eigen::ArrayXd& r2, Eigen::ArrayXd& out) const;

    [[nodiscard]] double eval_squared(double r2) const noexcept;

private:
    KernelSpec spec_;
    double epsilon_;
    double rho_;
    double rough_weight_;  // rho, or 1 for a pure rough kernel
};

/// Same as HybridKernel{spec, epsilon, rho}(r); kept as a free function.
[[nodiscard]] double eval_hybrid(const HybridKernel& k, double r);

}  // namespace wsie

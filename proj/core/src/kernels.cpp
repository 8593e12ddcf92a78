#include "wsie/kernels.hpp"

#include "wsie/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace wsie {

namespace {

std::string upper(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    return out;
}

// Piecewise-smooth kernels written in terms of r^2.
inline double rough_from_squared(RadialKernelId id, double r2) noexcept {
    if (id == RadialKernelId::CU) return r2 * std::sqrt(r2);
    return r2 > 0.0 ? 0.5 * r2 * std::log(r2) : 0.0;  // TPS
}

inline double smooth_from_squared(RadialKernelId id, double eps2, double r2) noexcept {
    switch (id) {
    case RadialKernelId::GA: return std::exp(-eps2 * r2);
    case RadialKernelId::MQ: return std::sqrt(eps2 * r2 + 1.0);
    default: return 1.0 / std::sqrt(eps2 * r2 + 1.0);  // IMQ
    }
}

}  // namespace

std::string_view to_string(RadialKernelId id) noexcept {
    switch (id) {
    case RadialKernelId::GA: return "GA";
    case RadialKernelId::MQ: return "MQ";
    case RadialKernelId::IMQ: return "IMQ";
    case RadialKernelId::TPS: return "TPS";
    case RadialKernelId::CU: return "CU";
    }
    return "?";
}

RadialKernelId parse_radial_kernel(std::string_view name) {
    const std::string u = upper(name);
    if (u == "GA") return RadialKernelId::GA;
    if (u == "MQ") return RadialKernelId::MQ;
    if (u == "IMQ") return RadialKernelId::IMQ;
    if (u == "TPS") return RadialKernelId::TPS;
    if (u == "CU") return RadialKernelId::CU;
    throw ConfigError("unknown radial kernel '" + std::string(name) + "'");
}

double eval_radial(RadialKernelId id, std::optional<double> epsilon, double r) {
    if (!(r >= 0.0)) throw DomainError("radial kernel evaluated at negative distance");
    if (is_smooth(id) != epsilon.has_value()) {
        throw ConfigError(std::string(to_string(id)) +
                          (is_smooth(id) ? " requires a shape parameter" : " takes no shape parameter"));
    }
    if (epsilon && !(*epsilon > 0.0)) throw ConfigError("shape parameter epsilon must be positive");
    switch (id) {
    case RadialKernelId::GA: {
        const double er = *epsilon * r;
        return std::exp(-er * er);
    }
    case RadialKernelId::MQ: return std::sqrt(*epsilon * *epsilon * r * r + 1.0);
    case RadialKernelId::IMQ: return 1.0 / std::sqrt(*epsilon * *epsilon * r * r + 1.0);
    case RadialKernelId::TPS: return r == 0.0 ? 0.0 : r * r * std::log(r);
    case RadialKernelId::CU: return r * r * r;
    }
    return 0.0;
}

std::string KernelSpec::to_string() const {
    std::string s;
    if (smooth) s += wsie::to_string(*smooth);
    if (smooth && rough) s += '+';
    if (rough) s += wsie::to_string(*rough);
    return s;
}

KernelSpec parse_kernel_spec(std::string_view text) {
    const std::string u = upper(text);
    KernelSpec spec;
    const auto plus = u.find('+');
    if (plus == std::string::npos) {
        const RadialKernelId id = parse_radial_kernel(u);
        (is_smooth(id) ? spec.smooth : spec.rough) = id;
        return spec;
    }
    const RadialKernelId a = parse_radial_kernel(u.substr(0, plus));
    const RadialKernelId b = parse_radial_kernel(u.substr(plus + 1));
    if (!is_smooth(a) || is_smooth(b)) {
        throw ConfigError("hybrid kernel must be <GA|MQ|IMQ>+<TPS|CU>, got '" + std::string(text) + "'");
    }
    spec.smooth = a;
    spec.rough = b;
    return spec;
}

HybridKernel::HybridKernel(KernelSpec spec, double epsilon, double rho)
    : spec_(spec), epsilon_(epsilon), rho_(rho), rough_weight_(spec.smooth ? rho : 1.0) {
    if (!spec_.smooth && !spec_.rough) throw ConfigError("empty kernel spec");
    if (spec_.smooth && !(epsilon_ > 0.0) )
        throw ConfigError("shape parameter epsilon must be positive");
    if (!(rho_ >= 0.0)) throw ConfigError("weight parameter rho must be nonnegative");
}

double HybridKernel::operator()(double r) const {
    double v = 0.0;
    if (spec_.smooth) v = eval_radial(*spec_.smooth, epsilon_, r);
    if (spec_.rough) v += rough_weight_ * eval_radial(*spec_.rough, std::nullopt, r);
    return v;
}

double HybridKernel::eval_squared(double r2) const noexcept {
    double v = 0.0;
    if (spec_.smooth) v = smooth_from_squared(*spec_.smooth, epsilon_ * epsilon_, r2);
    if (spec_.rough && rough_weight_ != 0.0) v += rough_weight_ * rough_from_squared(*spec_.rough, r2);
    return v;
}

void HybridKernel::eval_squared(const Eigen::ArrayXd& r2, Eigen::ArrayXd& out) const {
    const double eps2 = epsilon_ * epsilon_;
    if (spec_.smooth) {
        switch (*spec_.smooth) {
        case RadialKernelId::GA: out = (-eps2 * r2).exp(); break;
        case RadialKernelId::MQ: out = (eps2 * r2 + 1.0).sqrt(); break;
        default: out = (eps2 * r2 + 1.0).rsqrt(); break;
        }
    } else {
        out.setZero(r2.size());
    }
    if (!spec_.rough || rough_weight_ == 0.0) return;
    if (*spec_.rough == RadialKernelId::CU) {
        out += rough_weight_ * r2 * r2.sqrt();
    } else {
        // r2 == 0 would give 0 * -inf; the TPS value there is 0.
        out += rough_weight_ * (r2 > 0.0).select(0.5 * r2 * r2.log(), 0.0);
    }
}

double eval_hybrid(const HybridKernel& k, double r) { return k(r); }

}  // namespace wsie

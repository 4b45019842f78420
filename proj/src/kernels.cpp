#include "avgsa/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "avgsa/error.hpp"

namespace avgsa {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Kernel Kernel::from_name(std::string_view name) {
    if (name == "uniform") return Kernel(KernelKind::Uniform);
    if (name == "epanechnikov") return Kernel(KernelKind::Epanechnikov);
    if (name == "gaussian") return Kernel(KernelKind::Gaussian);
    throw ParseError("unknown kernel '" + std::string(name) +
                     "' (expected uniform|epanechnikov|gaussian)");
}

std::string_view Kernel::name() const noexcept {
    switch (kind_) {
        case KernelKind::Uniform: return "uniform";
        case KernelKind::Epanechnikov: return "epanechnikov";
        case KernelKind::Gaussian: return "gaussian";
    }
    return "?";
}

double Kernel::evaluate(double z) const noexcept {
    switch (kind_) {
        case KernelKind::Uniform: return std::abs(z) <= 0.5 ? 1.0 : 0.0;
        case KernelKind::Epanechnikov: return std::abs(z) <= 1.0 ? 0.75 * (1.0 - z * z) : 0.0;
        case KernelKind::Gaussian:
            return std::exp(-0.5 * z * z) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
    }
    return 0.0;
}

KernelConstants Kernel::constants() const noexcept {
    switch (kind_) {
        case KernelKind::Uniform: return {1.0, 1.0 / 12.0, 1.0};
        case KernelKind::Epanechnikov: return {0.6, 0.2, 2.0};
        case KernelKind::Gaussian: return {0.5 * std::numbers::inv_sqrtpi, 1.0, kInf};
    }
    return {0.0, 0.0, 0.0};
}

double Kernel::support_radius() const noexcept {
    switch (kind_) {
        case KernelKind::Uniform: return 0.5;
        case KernelKind::Epanechnikov: return 1.0;
        case KernelKind::Gaussian: return kInf;
    }
    return 0.0;
}

double Kernel::effective_radius() const noexcept {
    // exp(-144/2)/sqrt(2 pi) ~ 2e-32
    return kind_ == KernelKind::Gaussian ? 12.0 : support_radius();
}

}  // namespace avgsa

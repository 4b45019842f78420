#pragma once

#include <string_view>

namespace avgsa {

enum class KernelKind { Uniform, Epanechnikov, Gaussian };

struct KernelConstants {
    double squared_integral;          // int K^2
    double second_moment;             // int z^2 K
    double support_measure_positive;  // Lebesgue measure of {K > 0}; +inf for Gaussian
};

/// Nonnegative, even, unit-mass smoothing kernel with its analytic constants.
///
/// Uniform is the indicator of [-1/2, 1/2], Epanechnikov is 3/4 (1 - z^2) on
/// [-1, 1], Gaussian is the standard normal density. None of them takes
/// negative values, so the negative part of the support is always empty.
class Kernel {
public:
    explicit constexpr Kernel(KernelKind kind) noexcept : kind_(kind) {}

    /// Accepts "uniform", "epanechnikov", "gaussian"; throws ParseError otherwise.
    static Kernel from_name(std::string_view name);

    constexpr KernelKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept;

    double evaluate(double z) const noexcept;
    double operator()(double z) const noexcept { return evaluate(z); }

    KernelConstants constants() const noexcept;
    double squared_integral() const noexcept { return constants().squared_integral; }
    double second_moment() const noexcept { return constants().second_moment; }
    double support_measure_positive() const noexcept {
        return constants().support_measure_positive;
    }

    /// Half-width of {K > 0}; +inf for Gaussian.
    double support_radius() const noexcept;
    /// Half-width beyond which K is zero or numerically negligible (< 1e-31).
    double effective_radius() const noexcept;
    double max_value() const noexcept { return evaluate(0.0); }

    friend constexpr bool operator==(Kernel lhs, Kernel rhs) noexcept {
        return lhs.kind_ == rhs.kind_;
    }

private:
    KernelKind kind_;
};

inline double evaluate(Kernel kernel, double z) noexcept { return kernel.evaluate(z); }
inline KernelConstants kernel_constants(Kernel kernel) noexcept { return kernel.constants(); }

}  // namespace avgsa

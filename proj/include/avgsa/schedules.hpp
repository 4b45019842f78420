#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <string>
#include <vector>

namespace avgsa {

/// Deterministic sequence v_n = constant * n^(-exponent), n >= 1.
///
/// Every such sequence belongs to the regularly varying class with index
/// -exponent: n (1 - v_{n-1} / v_n) -> -exponent.
struct PowerSequence {
    double constant = 1.0;
    double exponent = 0.0;

    /// Throws ValidationError for n == 0.
    double value(std::uint64_t n) const;
    /// Direct summation of value(1..n). Requires exponent < 1.
    double partial_sum(std::uint64_t n) const;
    /// n (1 - v_{n-1} / v_n), evaluated without cancellation. Requires n >= 2.
    double regular_variation_index(std::uint64_t n) const;
};

inline double sequence_value(const PowerSequence& seq, std::uint64_t n) { return seq.value(n); }
inline double partial_sum(const PowerSequence& seq, std::uint64_t n) { return seq.partial_sum(n); }

struct Violation {
    std::string constraint;  // stable identifier, e.g. "bandwidth_exponent_upper"
    double actual;
    double bound;
    std::string message;
};

struct ExponentCheck {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return violations.empty(); }
    /// Human-readable summary of all violations, one per line.
    std::string describe() const;
};

/// Checks the admissible region for (alpha, a, q):
///   alpha in (3/4, 1]
///   a in (1 - alpha, (4 alpha - 3) / 2)   (nonempty only when alpha > 5/6)
///   q < min(1 - 2a, (1 + a) / 2)
/// alpha == 1 passes with a warning: with pure power stepsizes the
/// requirement n gamma_n / log(sum gamma_k) -> inf then fails.
ExponentCheck validate_exponents(double alpha, double a, double q);

/// Every constraint identifier ScheduleConfig::check can report, in check order.
inline constexpr std::array<std::string_view, 9> schedule_constraints{
    "stepsize_exponent_lower",  "stepsize_exponent_upper", "bandwidth_interval_empty",
    "bandwidth_exponent_lower", "bandwidth_exponent_upper", "weight_exponent_upper",
    "c_positive",               "c_prime_positive",        "gamma0_positive"};

/// Stepsize gamma_n = gamma0 n^-alpha, bandwidth h_n = c n^-a, weight q_n = c' n^-q.
struct ScheduleConfig {
    double alpha = 0.93;
    double a = 0.3;
    double q = 0.1;
    double c = 1.0;
    double c_prime = 1.0;
    double gamma0 = 1.0;

    PowerSequence stepsize() const noexcept { return {gamma0, alpha}; }
    PowerSequence bandwidth() const noexcept { return {c, a}; }
    PowerSequence weight() const noexcept { return {c_prime, q}; }

    /// Exponent check plus positivity of the constants.
    ExponentCheck check() const;
    /// Throws ValidationError naming every violated constraint.
    void validate() const;
};

}  // namespace avgsa

#include "avgsa/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "avgsa/error.hpp"

namespace avgsa {

double PowerSequence::value(std::uint64_t n) const {
    if (n == 0) throw ValidationError("sequence index must be >= 1");
    if (exponent == 0.0) return constant;
    return constant * std::pow(static_cast<double>(n), -exponent);
}

double PowerSequence::partial_sum(std::uint64_t n) const {
    if (!(exponent < 1.0)) {
        std::ostringstream os;
        os << "partial_sum requires exponent < 1 (got " << exponent << ")";
        throw ValidationError(os.str());
    }
    if (n == 0) throw ValidationError("sequence index must be >= 1");
    double sum = 0.0;
    for (std::uint64_t k = 1; k <= n; ++k) sum += value(k);
    return sum;
}

double PowerSequence::regular_variation_index(std::uint64_t n) const {
    if (n < 2) throw ValidationError("regular variation index needs n >= 2");
    const double nd = static_cast<double>(n);
    // v_{n-1}/v_n = (1 - 1/n)^(-exponent)
    return -nd * std::expm1(-exponent * std::log1p(-1.0 / nd));
}

std::string ExponentCheck::describe() const {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += '\n';
        out += v.constraint + ": " + v.message;
    }
    return out;
}

ExponentCheck validate_exponents(double alpha, double a, double q) {
    ExponentCheck result;
    auto fail = [&](std::string name, double actual, double bound, std::string msg) {
        result.violations.push_back({std::move(name), actual, bound, std::move(msg)});
    };
    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(10);
        os << v;
        return os.str();
    };

    if (!(alpha > 0.75))
        fail("stepsize_exponent_lower", alpha, 0.75, "alpha = " + fmt(alpha) + " must exceed 3/4");
    if (!(alpha <= 1.0))
        fail("stepsize_exponent_upper", alpha, 1.0, "alpha = " + fmt(alpha) + " must not exceed 1");

    const double a_lo = 1.0 - alpha;
    const double a_hi = (4.0 * alpha - 3.0) / 2.0;
    if (!(a_hi > a_lo)) {
        fail("bandwidth_interval_empty", a_hi, a_lo,
             "bandwidth interval (1-alpha, (4alpha-3)/2) = (" + fmt(a_lo) + ", " + fmt(a_hi) +
                 ") is empty; needs alpha > 5/6");
    }
    if (!(a > a_lo))
        fail("bandwidth_exponent_lower", a, a_lo,
             "a = " + fmt(a) + " must exceed 1 - alpha = " + fmt(a_lo));
    if (!(a < a_hi))
        fail("bandwidth_exponent_upper", a, a_hi,
             "a = " + fmt(a) + " must be below (4alpha-3)/2 = " + fmt(a_hi));

    const double q_hi = std::min(1.0 - 2.0 * a, (1.0 + a) / 2.0);
    if (!(q < q_hi))
        fail("weight_exponent_upper", q, q_hi,
             "q = " + fmt(q) + " must be below min(1-2a, (1+a)/2) = " + fmt(q_hi));

    if (alpha == 1.0) {
        result.warnings.emplace_back(
            "alpha = 1: with gamma_n = gamma0/n the growth condition "
            "n gamma_n / log(sum gamma_k) -> inf does not hold; averaging may converge slowly");
    }
    return result;
}

ExponentCheck ScheduleConfig::check() const {
    ExponentCheck result = validate_exponents(alpha, a, q);
    auto positive = [&](const char* name, double v) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            result.violations.push_back(
                {std::string(name) + "_positive", v, 0.0, std::string(name) + " must be positive and finite"});
        }
    };
    positive("c", c);
    positive("c_prime", c_prime);
    positive("gamma0", gamma0);
    return result;
}

void ScheduleConfig::validate() const {
    const ExponentCheck result = check();
    if (!result.ok()) throw ValidationError(result.describe());
}

}  // namespace avgsa

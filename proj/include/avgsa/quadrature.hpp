#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "avgsa/error.hpp"

namespace avgsa {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 400;

    /// Throws ValidationError when a tolerance is not positive or max_subdivisions < 1.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

/// 10-point Gauss / 21-point Kronrod nodes on [-1, 1] (non-negative half).
/// Odd indices of `nodes` are the Gauss nodes.
struct GaussKronrod21 {
    std::array<double, 11> nodes;
    std::array<double, 11> kronrod;
    std::array<double, 5> gauss;
};

const GaussKronrod21& gauss_kronrod21();

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gk21(F& f, double lo, double hi) {
    const auto& rule = gauss_kronrod21();
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<double, 21> fv{};
    fv[0] = f(centre);
    for (int i = 1; i < 11; ++i) {
        const double dx = half * rule.nodes[i];
        fv[2 * i - 1] = f(centre - dx);
        fv[2 * i] = f(centre + dx);
    }

    double res_k = rule.kronrod[0] * fv[0];
    double res_g = 0.0;
    double res_abs = std::abs(res_k);
    for (int i = 1; i < 11; ++i) {
        const double pair = fv[2 * i - 1] + fv[2 * i];
        res_k += rule.kronrod[i] * pair;
        res_abs += rule.kronrod[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
        if (i % 2 == 1) res_g += rule.gauss[i / 2] * pair;
    }
    const double mean = 0.5 * res_k;
    double res_asc = rule.kronrod[0] * std::abs(fv[0] - mean);
    for (int i = 1; i < 11; ++i)
        res_asc += rule.kronrod[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));

    const double value = res_k * half;
    res_abs *= std::abs(half);
    res_asc *= std::abs(half);
    double err = std::abs((res_k - res_g) * half);

    // QUADPACK error heuristic
    if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
    return {lo, hi, value, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (10/21) integration of f over [lo, hi].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol |value|). Integrable endpoint
/// singularities such as s^-0.3 converge because bisection grades towards
/// the endpoint; the 21 nodes never touch the endpoints themselves.
/// Throws NonConvergence once max_subdivisions panels are in use.
template <class F>
QuadratureResult integrate_1d(F&& f, double lo, double hi, const QuadratureSpec& spec = {}) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        std::ostringstream os;
        os << "integrate_1d needs finite lo < hi (got [" << lo << ", " << hi << "])";
        throw ValidationError(os.str());
    }
    std::priority_queue<detail::Panel> panels;
    detail::Panel first = detail::gk21(f, lo, hi);
    double total = first.value;
    double total_err = first.error;
    panels.push(first);

    auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (!(total_err <= target())) {
        if (static_cast<int>(panels.size()) >= spec.max_subdivisions || !std::isfinite(total_err)) {
            std::ostringstream os;
            os.precision(10);
            os << "adaptive quadrature on [" << lo << ", " << hi << "] did not reach tolerance "
               << target() << " with " << panels.size() << " panels (value " << total
               << ", error estimate " << total_err << ")";
            throw NonConvergence(os.str());
        }
        const detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const detail::Panel left = detail::gk21(f, worst.lo, mid);
        const detail::Panel right = detail::gk21(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }

    // Re-sum to shed the drift of the running updates.
    QuadratureResult out;
    out.intervals = static_cast<int>(panels.size());
    std::vector<detail::Panel> all;
    all.reserve(panels.size());
    while (!panels.empty()) {
        all.push_back(panels.top());
        panels.pop();
    }
    std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.lo < r.lo; });
    for (const auto& p : all) {
        out.value += p.value;
        out.error += p.error;
    }
    return out;
}

}  // namespace avgsa

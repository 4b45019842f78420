#pragma once

// Slow reference implementations, written independently of src/.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

struct Sample {
    double x;
    double y;
};

using KernelFn = std::function<double(double)>;

inline double epanechnikov(double z) { return std::abs(z) <= 1.0 ? 0.75 * (1.0 - z * z) : 0.0; }
inline double uniform(double z) { return std::abs(z) <= 0.5 ? 1.0 : 0.0; }
inline double gaussian(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

/// Keeps the whole Revesz trajectory and averages it at the end.
struct History {
    std::vector<double> r;  // r_0 .. r_n
    std::vector<double> q;  // q_1 .. q_n
};

inline History revesz_history(std::span<const Sample> data, double x, double r0, double gamma0, double alpha,
                              double c, double a, double c_prime, double q, const KernelFn& k) {
    History hist{{r0}, {}};
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        const double g = gamma0 * std::pow(n, -alpha);
        const double h = c * std::pow(n, -a);
        const double prev = hist.r.back();
        hist.r.push_back(prev + g / h * k((x - data[i].x) / h) * (data[i].y - prev));
        hist.q.push_back(c_prime * std::pow(n, -q));
    }
    return hist;
}

inline double weighted_average(const History& hist) {
    long double num = 0.0L, den = 0.0L;
    for (std::size_t i = 0; i < hist.q.size(); ++i) {
        num += static_cast<long double>(hist.q[i]) * hist.r[i + 1];
        den += hist.q[i];
    }
    return static_cast<double>(num / den);
}

inline double semi_recursive(std::span<const Sample> data, double x, double c, double a, const KernelFn& k) {
    long double num = 0.0L, den = 0.0L;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double h = c * std::pow(static_cast<double>(i + 1), -a);
        const double w = k((x - data[i].x) / h) / h;
        num += static_cast<long double>(data[i].y) * w;
        den += w;
    }
    return den == 0.0L ? 0.0 : static_cast<double>(num / den);
}

inline double nadaraya_watson(std::span<const Sample> data, double x, double h, const KernelFn& k) {
    long double num = 0.0L, den = 0.0L;
    for (const auto& s : data) {
        const double w = k((x - s.x) / h);
        num += static_cast<long double>(s.y) * w;
        den += w;
    }
    return den == 0.0L ? 0.0 : static_cast<double>(num / den);
}

/// psi(u) straight from its triple-integral definition in the original s
/// variable (tanh-sinh absorbs the s^-a endpoint singularity), Gauss-Legendre
/// in z on [-radius, radius] split at 0, and a y-integral against the normal
/// density by Gauss-Legendre on mean +- 10 sd.
inline double psi_gaussian_direct(double u, double a, double q, double f, double centre, double mean, double sd,
                                  const KernelFn& k, double radius) {
    using boost::math::quadrature::gauss;
    boost::math::quadrature::tanh_sinh<double> ts;
    auto over_s = [&](double s) {
        const double lam = u * std::pow(s, a - q);
        auto over_z = [&](double z) {
            const double kz = k(z);
            if (kz == 0.0) return 0.0;
            auto over_y = [&](double y) {
                const double dens = std::exp(-0.5 * ((y - mean) / sd) * ((y - mean) / sd)) /
                                    (sd * std::sqrt(2.0 * std::numbers::pi));
                return std::expm1(lam * kz * (y - centre) / f) * dens;
            };
            double acc = 0.0;
            const double width = 20.0 * sd / 16.0;
            for (int i = 0; i < 16; ++i) {
                const double lo = mean - 10.0 * sd + width * i;
                acc += gauss<double, 30>::integrate(over_y, lo, lo + width);
            }
            return acc;
        };
        double zint = 0.0;
        const int panels = 8;
        for (int i = 0; i < panels; ++i) {
            const double lo = -radius + 2.0 * radius * i / panels;
            zint += gauss<double, 20>::integrate(over_z, lo, lo + 2.0 * radius / panels);
        }
        return std::pow(s, -a) * zint;
    };
    return (1.0 - q) * f * ts.integrate(over_s, 0.0, 1.0);
}

/// Legendre transform of cosh(u) - 1.
inline double cosh_rate(double t) { return t * std::asinh(t) - std::sqrt(1.0 + t * t) + 1.0; }

}  // namespace oracle

#pragma once

// Exact finite-sample mean and variance of the averaged estimator for
// Y = X^2 + sigma N(0,1), X ~ U(0,1), Epanechnikov kernel, r0 = 0.
//
// With e_k = r_k(x) - r(x) the recursion is e_k = A_k e_{k-1} + B_k where
// A_k = 1 - gamma_k h_k^-1 K_k and B_k = gamma_k h_k^-1 K_k (Y_k - r(x)).
// (A_k, B_k) is independent of the past, so the first two moments of e_k and
// of S_k = sum q_j e_j propagate exactly. Every expectation over (X, Y) is a
// polynomial integral on the part of [-1, 1] where x - z h stays in [0, 1],
// evaluated in closed form.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

/// Dense polynomial in z, coefficients by ascending degree.
struct Poly {
    std::vector<double> c;

    Poly operator*(const Poly& o) const {
        Poly out{std::vector<double>(c.size() + o.c.size() - 1, 0.0)};
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < o.c.size(); ++j) out.c[i + j] += c[i] * o.c[j];
        return out;
    }
    Poly operator+(const Poly& o) const {
        Poly out{std::vector<double>(std::max(c.size(), o.c.size()), 0.0)};
        for (std::size_t i = 0; i < c.size(); ++i) out.c[i] += c[i];
        for (std::size_t i = 0; i < o.c.size(); ++i) out.c[i] += o.c[i];
        return out;
    }
    double integral(double lo, double hi) const {
        double s = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double p = static_cast<double>(i + 1);
            s += c[i] * (std::pow(hi, p) - std::pow(lo, p)) / p;
        }
        return s;
    }
};

struct AveragedMoments {
    std::uint64_t n;
    double bias;      // E[rbar_n - r(x)]
    double variance;  // Var[rbar_n]
};

struct MomentPlan {
    double alpha, gamma0, a, c, q, c_prime;
    double x;
    double sigma2;
};

inline std::vector<AveragedMoments> averaged_moments(const MomentPlan& p, const std::vector<std::uint64_t>& checkpoints) {
    const Poly kern{{0.75, 0.0, -0.75}};
    const Poly kern2 = kern * kern;
    const double rx = p.x * p.x;

    double me = -rx, ee = rx * rx;  // E[e], E[e^2] at r0 = 0
    double s = 0.0, ss = 0.0, se = 0.0, qsum = 0.0;
    std::vector<AveragedMoments> out;
    std::size_t next = 0;
    for (std::uint64_t k = 1; next < checkpoints.size(); ++k) {
        const double kd = static_cast<double>(k);
        const double g = p.gamma0 * std::pow(kd, -p.alpha);
        const double h = p.c * std::pow(kd, -p.a);
        const double qk = p.c_prime * std::pow(kd, -p.q);

        const double lo = std::max(-1.0, (p.x - 1.0) / h);
        const double hi = std::min(1.0, p.x / h);
        const Poly d{{0.0, -2.0 * p.x * h, h * h}};  // r(x - z h) - r(x)
        const double ez = kern.integral(lo, hi);
        const double ez2 = kern2.integral(lo, hi) / h;
        const double eeta = h * (kern * d).integral(lo, hi);
        const double eeta2 = h * (kern2 * (d * d + Poly{{p.sigma2}})).integral(lo, hi);
        const double ezeta = (kern2 * d).integral(lo, hi);

        const double ea = 1.0 - g * ez;
        const double ea2 = 1.0 - 2.0 * g * ez + g * g * ez2;
        const double eb = g / h * eeta;
        const double eab = g / h * (eeta - g * ezeta);
        const double eb2 = g * g / (h * h) * eeta2;

        const double s_e = ea * se + eb * s;  // E[S_{k-1} e_k]
        ee = ea2 * ee + 2.0 * eab * me + eb2;
        me = ea * me + eb;
        ss = ss + 2.0 * qk * s_e + qk * qk * ee;
        se = s_e + qk * ee;
        s = s + qk * me;
        qsum += qk;

        if (k == checkpoints[next]) {
            const double bias = s / qsum;
            out.push_back({k, bias, ss / (qsum * qsum) - bias * bias});
            ++next;
        }
    }
    return out;
}

}  // namespace oracle

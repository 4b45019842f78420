#include "avgsa/ratefn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <type_traits>

#include "avgsa/error.hpp"

namespace avgsa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

/// E[xi^order e^(lambda xi)] with xi = (Y - centre)/f; order 0 returns
/// E[e^(lambda xi)] - 1 computed without cancellation.
double law_moment(const ConditionalLaw& law, double centre, double f, int order, double lambda) {
    return std::visit(
        [&](const auto& l) -> double {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, GaussianLaw>) {
                const double mu = (l.mean - centre) / f;
                const double s2 = (l.sd / f) * (l.sd / f);
                const double e = lambda * mu + 0.5 * lambda * lambda * s2;
                const double tilt = mu + lambda * s2;
                switch (order) {
                    case 0: return std::expm1(e);
                    case 1: return tilt * std::exp(e);
                    default: return (s2 + tilt * tilt) * std::exp(e);
                }
            } else {
                double sum = 0.0;
                for (std::size_t i = 0; i < l.values.size(); ++i) {
                    const double xi = (l.values[i] - centre) / f;
                    switch (order) {
                        case 0: sum += l.probs[i] * std::expm1(lambda * xi); break;
                        case 1: sum += l.probs[i] * xi * std::exp(lambda * xi); break;
                        default: sum += l.probs[i] * xi * xi * std::exp(lambda * xi); break;
                    }
                }
                return sum;
            }
        },
        law);
}

SignStructure classify(const ConditionalLaw& law, double centre) {
    bool above = false;
    bool below = false;
    std::visit(
        [&](const auto& l) {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, GaussianLaw>) {
                if (l.sd > 0.0) {
                    above = below = true;
                } else {
                    above = l.mean > centre;
                    below = l.mean < centre;
                }
            } else {
                for (std::size_t i = 0; i < l.values.size(); ++i) {
                    if (l.probs[i] <= 0.0) continue;
                    above = above || l.values[i] > centre;
                    below = below || l.values[i] < centre;
                }
            }
        },
        law);
    if (above && below) return SignStructure::Mixed;
    if (above) return SignStructure::NonNegative;
    if (below) return SignStructure::NonPositive;
    return SignStructure::Degenerate;
}

}  // namespace

PsiContext::PsiContext(double a, double q, double x, Model model, Kernel kernel, QuadratureSpec spec)
    : a_(a), q_(q), x_(x), model_(std::move(model)), kernel_(kernel), spec_(spec) {
    spec_.validate();
    if (!(a > 0.0 && a < 0.5))
        throw ValidationError("bandwidth exponent a = " + fmt(a) + " must lie in (0, 1/2)");
    const double q_hi = std::min(1.0 - 2.0 * a, (1.0 + a) / 2.0);
    if (!(q < q_hi))
        throw ValidationError("q = " + fmt(q) + " must be below min(1-2a, (1+a)/2) = " + fmt(q_hi));
    if (!(q <= a))
        throw ValidationError("q = " + fmt(q) + " exceeds a = " + fmt(a) +
                              ": s^(a-q) is unbounded near 0 and psi diverges for u != 0");
    const Truth t = model_.truth(x, kernel_);
    f_ = t.f;
    if (!(f_ > 0.0)) throw ValidationError("design density vanishes at x = " + fmt(x));
    centre_ = t.r;
    law_ = model_.cond_law(x);
    sign_ = classify(law_, centre_);
}

PsiContext PsiContext::with_centre(double centre) const {
    PsiContext copy = *this;
    copy.centre_ = centre;
    copy.sign_ = classify(copy.law_, centre);
    return copy;
}

double PsiContext::integrate(int order, double u) const {
    const double beta = (a_ - q_) / (1.0 - a_);
    const double radius = kernel_.effective_radius();

    QuadratureSpec inner_spec = spec_;
    inner_spec.abs_tol = spec_.abs_tol * 1e-3;
    inner_spec.rel_tol = std::max(spec_.rel_tol * 1e-2, 1e-14);

    auto over_t = [&](double t) {
        const double tb = beta == 0.0 ? 1.0 : std::pow(t, beta);
        auto over_z = [&](double z) {
            const double k = kernel_(z);
            if (k == 0.0) return 0.0;
            const double m = law_moment(law_, centre_, f_, order, u * tb * k);
            return order == 0 ? m : (order == 1 ? k * m : k * k * m);
        };
        // K is even; integrate the half-line and double.
        const double half = integrate_1d(over_z, 0.0, radius, inner_spec).value;
        const double weight = order == 0 ? 1.0 : (order == 1 ? tb : tb * tb);
        return 2.0 * weight * half;
    };
    const double outer = integrate_1d(over_t, 0.0, 1.0, spec_).value;
    return (1.0 - q_) / (1.0 - a_) * f_ * outer;
}

double PsiContext::psi(double u) const { return integrate(0, u); }

PsiDerivatives PsiContext::derivatives(double u) const { return {integrate(1, u), integrate(2, u)}; }

double PsiContext::one_sided_limit() const noexcept {
    return (1.0 - q_) / (1.0 - a_) * kernel_.support_measure_positive() * f_;
}

namespace {

/// psi'(u) - t, with evaluation failures at large |u| (overflow of the
/// exponential moment) read as +-inf: psi' is increasing.
double slope_gap(const PsiContext& ctx, double u, double t) {
    try {
        const double d = ctx.derivatives(u).psi1;
        if (std::isfinite(d)) return d - t;
    } catch (const NumericError&) {
    }
    return u > 0.0 ? kInf : -kInf;
}

}  // namespace

RatePoint rate_I(const PsiContext& ctx, double t) {
    if (!std::isfinite(t)) throw ValidationError("rate_I needs a finite t");
    switch (ctx.sign_structure()) {
        case SignStructure::Degenerate:
            if (t == 0.0) return {0.0, 0.0, 0.0};
            return {kInf, kNaN, kNaN};
        case SignStructure::NonNegative:
            if (t < 0.0) return {kInf, kNaN, kNaN};
            if (t == 0.0) return {ctx.one_sided_limit(), kNaN, kNaN};
            break;
        case SignStructure::NonPositive:
            if (t > 0.0) return {kInf, kNaN, kNaN};
            if (t == 0.0) return {ctx.one_sided_limit(), kNaN, kNaN};
            break;
        case SignStructure::Mixed: break;
    }

    constexpr double kMaxBracket = 1024.0;
    double lo = -1.0;
    double hi = 1.0;
    while (slope_gap(ctx, hi, t) < 0.0) {
        if (hi >= kMaxBracket)
            throw RootNotBracketed("psi'(u) = " + fmt(t) + " has no root in [-1024, 1024]");
        hi *= 2.0;
    }
    while (slope_gap(ctx, lo, t) > 0.0) {
        if (lo <= -kMaxBracket)
            throw RootNotBracketed("psi'(u) = " + fmt(t) + " has no root in [-1024, 1024]");
        lo *= 2.0;
    }

    const double tol = 1e-10 * std::max(1.0, std::abs(t));
    double u = std::clamp(0.0, lo, hi);
    for (int iter = 0; iter < 100; ++iter) {
        PsiDerivatives d{};
        bool ok = true;
        try {
            d = ctx.derivatives(u);
            ok = std::isfinite(d.psi1) && std::isfinite(d.psi2);
        } catch (const NumericError&) {
            ok = false;
        }
        if (!ok) {
            (u > 0.0 ? hi : lo) = u;
            u = 0.5 * (lo + hi);
            continue;
        }
        const double gap = d.psi1 - t;
        const bool collapsed =
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(u));
        if (std::abs(gap) < tol || collapsed) {
            const double p = ctx.psi(u);
            return {t * u - p, u, p};
        }
        (gap < 0.0 ? lo : hi) = u;
        double next = d.psi2 > 0.0 ? u - gap / d.psi2 : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        u = next;
    }
    throw NonConvergence("Newton inversion of psi' did not converge for t = " + fmt(t));
}

LegendreOracle::LegendreOracle(std::function<double(double)> psi, double u_lo, double u_hi,
                               std::size_t points)
    : psi_(std::move(psi)) {
    if (!(u_lo < u_hi) || points < 3) throw ValidationError("oracle grid needs u_lo < u_hi and >= 3 points");
    u_.resize(points);
    values_.resize(points);
    const double step = (u_hi - u_lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        u_[i] = i + 1 == points ? u_hi : u_lo + step * static_cast<double>(i);
        values_[i] = psi_(u_[i]);
    }
}

double LegendreOracle::operator()(double t) const {
    std::size_t best = 0;
    double best_val = -kInf;
    for (std::size_t i = 0; i < u_.size(); ++i) {
        const double v = u_[i] * t - values_[i];
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best == 0 || best + 1 == u_.size()) {
        throw GridBoundary("conjugate maximiser for t = " + fmt(t) + " sits at the grid edge u = " +
                           fmt(u_[best]) + "; widen the grid");
    }

    // Golden-section search for the maximum of the concave u t - psi(u).
    const double inv_phi = std::numbers::phi - 1.0;
    double lo = u_[best - 1];
    double hi = u_[best + 1];
    auto objective = [&](double u) { return u * t - psi_(u); };
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = objective(c);
    double fd = objective(d);
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * std::max(1.0, std::abs(c)); ++iter) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = objective(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = objective(d);
        }
    }
    return std::max({best_val, fc, fd});
}

double legendre_oracle(const LegendreOracle& table, double t) { return table(t); }

bool MdpRate::infinite() const noexcept { return std::isinf(base); }

double MdpRate::operator()(double t) const noexcept {
    if (t == 0.0) return 0.0;
    if (infinite()) return kInf;
    return factor * base * t * t / 2.0;
}

double MdpRate::asymptotic_variance() const noexcept { return 1.0 / (factor * base); }

MdpRate make_mdp_rate(EstimatorKind kind, double a, double q, double f, double var, Kernel kernel) {
    if (!(f > 0.0)) throw ValidationError("MDP rate needs f(x) > 0");
    if (!(var >= 0.0)) throw ValidationError("MDP rate needs Var[Y|X=x] >= 0");
    double factor = 1.0;
    switch (kind) {
        case EstimatorKind::Averaged:
            factor = q == a ? 1.0 / (1.0 - a) : (1.0 + a - 2.0 * q) / ((1.0 - q) * (1.0 - q));
            break;
        case EstimatorKind::NadarayaWatson: factor = 1.0; break;
        case EstimatorKind::SemiRecursive: factor = 1.0 + a; break;
    }
    const double base = var == 0.0 ? kInf : f / (var * kernel.squared_integral());
    return {kind, factor, base};
}

double mdp_rate(EstimatorKind kind, double a, double q, const Truth& truth, Kernel kernel, double t) {
    return make_mdp_rate(kind, a, q, truth.f, truth.var, kernel)(t);
}

}  // namespace avgsa

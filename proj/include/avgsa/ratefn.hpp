#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "avgsa/kernels.hpp"
#include "avgsa/models.hpp"
#include "avgsa/quadrature.hpp"

namespace avgsa {

/// Which sides of the centring value the conditional law charges, on the
/// positive part of the kernel. Declared by the model's conditional law; no
/// numeric sign testing is involved.
enum class SignStructure {
    Mixed,        // mass on both sides: psi' ranges over all of R
    NonNegative,  // Y >= centre a.s., mass above: psi' ranges over (0, inf)
    NonPositive,  // Y <= centre a.s., mass below: psi' ranges over (-inf, 0)
    Degenerate,   // Y == centre a.s.: psi is identically 0
};

struct PsiDerivatives {
    double psi1;
    double psi2;
};

/// Evaluation context of the large-deviation log-moment function
///
///   psi(u) = (1-q) int_[0,1] int_R int_R s^-a (exp(u s^(a-q) K(z) (y - c)/f(x)) - 1) g(x, y) ds dz dy
///
/// with c = r(x) unless overridden. The substitution s = t^(1/(1-a)) turns
/// s^-a ds into dt/(1-a), so every s-integral below is regular at 0. The
/// y-integral is an exact sum for atomic laws and a closed-form Gaussian
/// moment generating function otherwise.
///
/// Requires 0 < a < 1/2, q <= a and q < min(1-2a, (1+a)/2). For q > a the
/// factor s^(a-q) is unbounded near 0 and psi(u) = +inf for every u != 0.
class PsiContext {
public:
    PsiContext(double a, double q, double x, Model model, Kernel kernel, QuadratureSpec spec = {});

    /// Copy with the centring value y - c replaced. Used to build contexts
    /// whose conditional law sits on one side of the centre.
    PsiContext with_centre(double centre) const;

    double a() const noexcept { return a_; }
    double q() const noexcept { return q_; }
    double x() const noexcept { return x_; }
    const Model& model() const noexcept { return model_; }
    Kernel kernel() const noexcept { return kernel_; }
    const QuadratureSpec& spec() const noexcept { return spec_; }
    double density() const noexcept { return f_; }
    double centre() const noexcept { return centre_; }
    SignStructure sign_structure() const noexcept { return sign_; }

    double psi(double u) const;
    PsiDerivatives derivatives(double u) const;

    /// -lim_{u -> -inf} psi(u) for NonNegative laws (and u -> +inf for
    /// NonPositive): (1-q)/(1-a) lambda(S+) f(x). +inf for the Gaussian kernel.
    double one_sided_limit() const noexcept;

private:
    double integrate(int order, double u) const;

    double a_, q_, x_;
    Model model_;
    Kernel kernel_;
    QuadratureSpec spec_;
    double f_;
    double centre_;
    ConditionalLaw law_;
    SignStructure sign_;
};

inline double psi(const PsiContext& ctx, double u) { return ctx.psi(u); }
inline PsiDerivatives psi_derivatives(const PsiContext& ctx, double u) { return ctx.derivatives(u); }

struct RatePoint {
    double value;          // I(t), possibly +inf
    double u_star;         // maximiser of u t - psi(u); NaN when no finite maximiser exists
    double psi_at_u_star;  // NaN alongside u_star
};

/// Legendre transform I(t) = sup_u (u t - psi(u)).
///
/// Inside the range of psi' the maximiser solves psi'(u) = t by Newton's
/// method safeguarded with bisection on a bracket that doubles from [-1, 1]
/// up to [-2^10, 2^10]. Converged when |psi'(u) - t| < 1e-10 max(1, |t|).
/// Outside that range the closed forms apply: +inf on the empty side and
/// one_sided_limit() at t = 0. Throws RootNotBracketed when the bracket
/// cannot be found and NonConvergence after 100 iterations.
RatePoint rate_I(const PsiContext& ctx, double t);

/// Tabulates psi on a uniform grid once and evaluates its conjugate by brute
/// force: grid argmax of u t - psi(u), refined by golden-section search on
/// the two neighbouring cells. Independent of psi' and of rate_I.
class LegendreOracle {
public:
    LegendreOracle(std::function<double(double)> psi, double u_lo, double u_hi, std::size_t points);

    /// Throws GridBoundary when the grid maximiser is an endpoint.
    double operator()(double t) const;

    const std::vector<double>& u() const noexcept { return u_; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::function<double(double)> psi_;
    std::vector<double> u_;
    std::vector<double> values_;
};

double legendre_oracle(const LegendreOracle& table, double t);

enum class EstimatorKind { Averaged, NadarayaWatson, SemiRecursive };

/// Quadratic moderate-deviation rate J(t) = factor * base * t^2 / 2 with
/// base = f / (Var[Y|X=x] int K^2) and factor
///   Averaged:       (1 + a - 2q) / (1 - q)^2   (1/(1-a) when q == a)
///   NadarayaWatson: 1
///   SemiRecursive:  1 + a
struct MdpRate {
    EstimatorKind kind;
    double factor;
    double base;  // +inf when the conditional variance is 0

    bool infinite() const noexcept;
    double operator()(double t) const noexcept;
    /// 1 / (factor * base): the limit of n h_n Var of the estimator.
    double asymptotic_variance() const noexcept;
};

/// Throws ValidationError for f <= 0 or var < 0.
MdpRate make_mdp_rate(EstimatorKind kind, double a, double q, double f, double var, Kernel kernel);
double mdp_rate(EstimatorKind kind, double a, double q, const Truth& truth, Kernel kernel, double t);

}  // namespace avgsa

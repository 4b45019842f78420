#pragma once

#include <random>
#include <string_view>
#include <variant>
#include <vector>

#include "avgsa/kernels.hpp"
#include "avgsa/rng.hpp"

namespace avgsa {

enum class ModelKind { UniformQuadraticGauss, UniformRademacher, ConstantResponse };

struct Observation {
    double x;
    double y;
};

/// Y | X = x ~ N(mean, sd^2).
struct GaussianLaw {
    double mean;
    double sd;
};

/// Y | X = x takes values[i] with probability probs[i].
struct AtomicLaw {
    std::vector<double> values;
    std::vector<double> probs;
};

using ConditionalLaw = std::variant<GaussianLaw, AtomicLaw>;

/// Closed-form ground truth at an evaluation point.
struct Truth {
    double f;    // design density
    double r;    // regression function E[Y | X = x]
    double var;  // Var[Y | X = x]
    double m2;   // bias curvature, already multiplied by int z^2 K
};

/// Synthetic joint law of (X, Y) with X ~ U(0, 1).
///
///   UniformQuadraticGauss:  Y = X^2 + sigma * N(0, 1)
///   UniformRademacher:      Y = +-1 with probability 1/2, independent of X
///   ConstantResponse:       Y = y_const
class Model {
public:
    static Model uniform_quadratic_gauss(double sigma = 0.5);
    static Model uniform_rademacher();
    static Model constant_response(double y_const = 3.0);
    /// Names: uniform_quadratic_gauss | uniform_rademacher | constant_response.
    static Model from_name(std::string_view name, double sigma = 0.5, double y_const = 3.0);

    ModelKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept;
    double sigma() const noexcept { return sigma_; }
    double y_const() const noexcept { return y_const_; }

    double density(double x) const noexcept;
    double density_second_derivative(double x) const noexcept;
    double regression(double x) const noexcept;
    double regression_second_derivative(double x) const noexcept;
    double cond_var(double x) const noexcept;

    /// (1/(2f)) [ (r f)'' - r f'' ] int z^2 K.
    double m2(double x, Kernel kernel) const noexcept;

    /// Throws ValidationError unless 0 < x < 1.
    Truth truth(double x, Kernel kernel) const;
    ConditionalLaw cond_law(double x) const;

    /// One draw; builds a fresh sampler, so prefer Sampler in loops.
    Observation sample(Rng& rng) const;

private:
    Model(ModelKind kind, double sigma, double y_const)
        : kind_(kind), sigma_(sigma), y_const_(y_const) {}

    ModelKind kind_;
    double sigma_;
    double y_const_;
};

inline Truth truth(const Model& model, double x, Kernel kernel) { return model.truth(x, kernel); }

/// Stateful i.i.d. sampler; owns the distribution objects for one stream.
class Sampler {
public:
    explicit Sampler(const Model& model) : model_(model) {}

    Observation operator()(Rng& rng);

private:
    Model model_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::bernoulli_distribution coin_{0.5};
};

}  // namespace avgsa

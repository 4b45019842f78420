#include "avgsa/models.hpp"

#include <sstream>
#include <string>

#include "avgsa/error.hpp"

namespace avgsa {

Model Model::uniform_quadratic_gauss(double sigma) {
    if (!(sigma >= 0.0)) throw ValidationError("sigma must be >= 0");
    return Model(ModelKind::UniformQuadraticGauss, sigma, 0.0);
}

Model Model::uniform_rademacher() { return Model(ModelKind::UniformRademacher, 1.0, 0.0); }

Model Model::constant_response(double y_const) {
    return Model(ModelKind::ConstantResponse, 0.0, y_const);
}

Model Model::from_name(std::string_view name, double sigma, double y_const) {
    if (name == "uniform_quadratic_gauss") return uniform_quadratic_gauss(sigma);
    if (name == "uniform_rademacher") return uniform_rademacher();
    if (name == "constant_response") return constant_response(y_const);
    throw ParseError("unknown model '" + std::string(name) +
                     "' (expected uniform_quadratic_gauss|uniform_rademacher|constant_response)");
}

std::string_view Model::name() const noexcept {
    switch (kind_) {
        case ModelKind::UniformQuadraticGauss: return "uniform_quadratic_gauss";
        case ModelKind::UniformRademacher: return "uniform_rademacher";
        case ModelKind::ConstantResponse: return "constant_response";
    }
    return "?";
}

double Model::density(double x) const noexcept { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; }

double Model::density_second_derivative(double) const noexcept { return 0.0; }

double Model::regression(double x) const noexcept {
    switch (kind_) {
        case ModelKind::UniformQuadraticGauss: return x * x;
        case ModelKind::UniformRademacher: return 0.0;
        case ModelKind::ConstantResponse: return y_const_;
    }
    return 0.0;
}

double Model::regression_second_derivative(double) const noexcept {
    return kind_ == ModelKind::UniformQuadraticGauss ? 2.0 : 0.0;
}

double Model::cond_var(double) const noexcept {
    switch (kind_) {
        case ModelKind::UniformQuadraticGauss: return sigma_ * sigma_;
        case ModelKind::UniformRademacher: return 1.0;
        case ModelKind::ConstantResponse: return 0.0;
    }
    return 0.0;
}

double Model::m2(double x, Kernel kernel) const noexcept {
    const double f = density(x);
    const double f2 = density_second_derivative(x);
    const double r = regression(x);
    const double r2 = regression_second_derivative(x);
    // (r f)'' = r'' f + 2 r' f' + r f''; f' = 0 on the interior.
    const double af2 = r2 * f + r * f2;
    return (af2 - r * f2) / (2.0 * f) * kernel.second_moment();
}

Truth Model::truth(double x, Kernel kernel) const {
    if (!(x > 0.0 && x < 1.0)) {
        std::ostringstream os;
        os << "evaluation point x = " << x << " is not interior to the design support (0, 1)";
        throw ValidationError(os.str());
    }
    return {density(x), regression(x), cond_var(x), m2(x, kernel)};
}

ConditionalLaw Model::cond_law(double x) const {
    switch (kind_) {
        case ModelKind::UniformQuadraticGauss:
            if (sigma_ == 0.0) return AtomicLaw{{x * x}, {1.0}};
            return GaussianLaw{x * x, sigma_};
        case ModelKind::UniformRademacher: return AtomicLaw{{-1.0, 1.0}, {0.5, 0.5}};
        case ModelKind::ConstantResponse: return AtomicLaw{{y_const_}, {1.0}};
    }
    return AtomicLaw{};
}

Observation Model::sample(Rng& rng) const {
    Sampler sampler(*this);
    return sampler(rng);
}

Observation Sampler::operator()(Rng& rng) {
    const double x = uniform_(rng);
    switch (model_.kind()) {
        case ModelKind::UniformQuadraticGauss: {
            const double noise = model_.sigma() == 0.0 ? 0.0 : model_.sigma() * normal_(rng);
            return {x, x * x + noise};
        }
        case ModelKind::UniformRademacher: return {x, coin_(rng) ? 1.0 : -1.0};
        case ModelKind::ConstantResponse: return {x, model_.y_const()};
    }
    return {x, 0.0};
}

}  // namespace avgsa

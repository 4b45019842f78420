#include "avgsa/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace avgsa {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw ValidationError("quadrature tolerances must be positive");
    if (max_subdivisions < 1) throw ValidationError("max_subdivisions must be >= 1");
}

namespace detail {

const GaussKronrod21& gauss_kronrod21() {
    static const GaussKronrod21 rule = [] {
        using boost::math::quadrature::gauss;
        using boost::math::quadrature::gauss_kronrod;
        GaussKronrod21 r{};
        const auto& x = gauss_kronrod<double, 21>::abscissa();
        const auto& wk = gauss_kronrod<double, 21>::weights();
        const auto& wg = gauss<double, 10>::weights();
        for (std::size_t i = 0; i < 11; ++i) {
            r.nodes[i] = x[i];
            r.kronrod[i] = wk[i];
        }
        for (std::size_t i = 0; i < 5; ++i) r.gauss[i] = wg[i];
        return r;
    }();
    return rule;
}

}  // namespace detail
}  // namespace avgsa

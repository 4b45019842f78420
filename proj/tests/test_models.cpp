#include <doctest.h>

#include <cmath>
#include <variant>

#include "avgsa/error.hpp"
#include "avgsa/models.hpp"

using namespace avgsa;

TEST_CASE("ground truth of the quadratic model") {
    const auto m = Model::uniform_quadratic_gauss(0.5);
    const auto t = m.truth(0.5, Kernel(KernelKind::Epanechnikov));
    CHECK(t.f == 1.0);
    CHECK(t.r == 0.25);
    CHECK(t.var == 0.25);
    // r'' = 2, f'' = 0: m2 = r''/2 * int z^2 K = 0.2.
    CHECK(t.m2 == doctest::Approx(0.2).epsilon(1e-15));
    CHECK_THROWS_AS(m.truth(1.0, Kernel(KernelKind::Epanechnikov)), ValidationError);
}

TEST_CASE("Rademacher and constant models") {
    const auto rad = Model::uniform_rademacher();
    CHECK(rad.regression(0.3) == 0.0);
    CHECK(rad.cond_var(0.3) == 1.0);
    CHECK(rad.m2(0.3, Kernel(KernelKind::Uniform)) == 0.0);
    const auto law = std::get<AtomicLaw>(rad.cond_law(0.3));
    CHECK(law.values.size() == 2);

    const auto con = Model::constant_response(3.0);
    CHECK(con.regression(0.7) == 3.0);
    CHECK(con.cond_var(0.7) == 0.0);
}

TEST_CASE("model names") {
    CHECK(Model::from_name("uniform_rademacher").kind() == ModelKind::UniformRademacher);
    CHECK(Model::from_name("constant_response", 0.5, 2.0).y_const() == 2.0);
    CHECK_THROWS_AS(Model::from_name("logistic"), ParseError);
    CHECK_THROWS_AS(Model::uniform_quadratic_gauss(-1.0), ValidationError);
}

TEST_CASE("sampler reproduces the conditional moments") {
    const auto m = Model::uniform_quadratic_gauss(0.5);
    Rng rng = make_stream(42, 0);
    Sampler s(m);
    const int n = 200000;
    double sx = 0.0, sres = 0.0, sres2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto o = s(rng);
        REQUIRE(o.x >= 0.0);
        REQUIRE(o.x <= 1.0);
        const double res = o.y - o.x * o.x;
        sx += o.x;
        sres += res;
        sres2 += res * res;
    }
    CHECK(sx / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sres / n) < 4.0 * 0.5 / std::sqrt(n));
    CHECK(sres2 / n == doctest::Approx(0.25).epsilon(0.01));

    Rng r2 = make_stream(1, 3);
    Sampler rad(Model::uniform_rademacher());
    for (int i = 0; i < 1000; ++i) {
        const double y = rad(r2).y;
        REQUIRE((y == 1.0 || y == -1.0));
    }
}

TEST_CASE("streams depend only on (seed, index)") {
    Rng a = make_stream(5, 17);
    Rng b = make_stream(5, 17);
    Rng c = make_stream(5, 18);
    Rng d = make_stream(6, 17);
    const auto va = a();
    CHECK(va == b());
    CHECK(va != c());
    CHECK(va != d());
}

#include <doctest.h>

#include <string>

#include "avgsa/config.hpp"
#include "avgsa/error.hpp"

using namespace avgsa;

TEST_CASE("minimal flat document") {
    const auto cfg = parse_config("alpha = 1\na = 0.3\nq = 0.1\nkernel = epanechnikov\nmodel = uniform_quadratic_gauss\n");
    CHECK(cfg.schedule.alpha == 1.0);
    CHECK(cfg.schedule.a == 0.3);
    CHECK(cfg.kernel == "epanechnikov");
    CHECK_FALSE(cfg.seed.has_value());
}

TEST_CASE("sectioned document") {
    const auto cfg = parse_config(R"(
; acceptance plan
[schedule]
alpha = 0.93
gamma0 = 4
c = 2

[model]
model = uniform_rademacher
kernel = uniform

[experiment]
x_points = 0.3, 0.5
n_list = 100, 1000
seed = 17
tail_thresholds = -0.2, 0.2
two_sided = true
)");
    CHECK(cfg.schedule.gamma0 == 4.0);
    CHECK(cfg.x_points == std::vector<double>{0.3, 0.5});
    CHECK(cfg.n_list == std::vector<std::uint64_t>{100, 1000});
    CHECK(cfg.seed == 17u);
    CHECK(cfg.two_sided);
    const auto plan = cfg.plan();
    CHECK(plan.master_seed == 17u);
    CHECK(plan.model.kind() == ModelKind::UniformRademacher);
}

TEST_CASE("errors carry line and key") {
    auto message = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const Error& e) {
            return std::string(e.tag()) + ": " + e.what();
        }
        return std::string("no error");
    };
    CHECK(message("a = 0.3\nkernel = triweight\n").find("parse") == 0);
    CHECK(message("a = 0.3\nbandwith = 2\n") == "parse: line 2, key 'bandwith': unknown key");
    CHECK(message("[schedule]\nkernel = uniform\n").find("line 2, key 'kernel'") != std::string::npos);
    CHECK(message("[model]\nsigma = wide\n").find("line 2") != std::string::npos);
    CHECK(message("[extras]\nfoo = 1\n").find("unknown section") != std::string::npos);
    CHECK(message("a = 0.3\na = 0.2\n").find("parse") == 0);
    const auto bad_a = message("alpha = 1\na = 0.6\n");
    CHECK(bad_a.find("validation") == 0);
    CHECK(bad_a.find("bandwidth_exponent_upper") != std::string::npos);
    CHECK(message("two_sided = maybe\n").find("true or false") != std::string::npos);
}

TEST_CASE("missing seed is rejected when planning") {
    const auto cfg = parse_config("a = 0.3\n");
    CHECK_THROWS_AS(cfg.plan(), ValidationError);
}

TEST_CASE("config echo round trips") {
    RunConfig cfg;
    cfg.schedule.alpha = 0.9300000000000001;
    cfg.schedule.gamma0 = 1.0 / 3.0;
    cfg.x_points = {0.25, 0.1 + 0.2};
    cfg.seed = 123456789012345ULL;
    cfg.tail_thresholds = {-0.2, 0.2};
    cfg.model = "constant_response";
    cfg.y_const = 2.5;
    cfg.quadrature.rel_tol = 1e-9;
    const auto back = parse_config(to_ini(cfg));
    CHECK(back == cfg);
    CHECK(to_ini(back) == to_ini(cfg));
}

TEST_CASE("grid specs") {
    const auto g = GridSpec::parse("0:1:4");
    CHECK(g.points() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(GridSpec::parse("-2:2:1").points().size() == 2);
    CHECK_THROWS_AS(GridSpec::parse("0:1"), ParseError);
    CHECK_THROWS_AS(GridSpec::parse("0:x:3"), ParseError);
    CHECK_THROWS_AS(GridSpec::parse("1:0:3"), ValidationError);
    CHECK_THROWS_AS(GridSpec::parse("0:1:0"), ValidationError);
}

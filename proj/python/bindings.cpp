#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "avgsa/config.hpp"
#include "avgsa/error.hpp"
#include "avgsa/estimators.hpp"
#include "avgsa/experiments.hpp"
#include "avgsa/kernels.hpp"
#include "avgsa/models.hpp"
#include "avgsa/report.hpp"
#include "avgsa/ratefn.hpp"
#include "avgsa/schedules.hpp"

namespace py = pybind11;
using namespace avgsa;

namespace {

py::dict check_to_dict(const ExponentCheck& c) {
    py::list violations;
    for (const auto& v : c.violations) {
        py::dict d;
        d["constraint"] = v.constraint;
        d["actual"] = v.actual;
        d["bound"] = v.bound;
        d["message"] = v.message;
        violations.append(d);
    }
    py::dict out;
    out["ok"] = c.ok();
    out["violations"] = violations;
    out["warnings"] = c.warnings;
    return out;
}

EstimatorKind estimator_kind(const std::string& name) {
    if (name == "averaged") return EstimatorKind::Averaged;
    if (name == "nadaraya_watson") return EstimatorKind::NadarayaWatson;
    if (name == "semi_recursive") return EstimatorKind::SemiRecursive;
    throw ParseError("unknown estimator '" + name + "' (expected averaged, nadaraya_watson, semi_recursive)");
}

std::vector<Observation> zip_observations(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw ValidationError("xs and ys differ in length");
    std::vector<Observation> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = {xs[i], ys[i]};
    return out;
}

/// Runs one experiment from INI text; the summary document plus the per-cell rows, as JSON text.
std::string run_experiment_json(const std::string& kind_name, const std::string& config_text,
                                std::optional<std::uint64_t> seed, std::optional<unsigned> threads) {
    auto config = parse_config(config_text);
    if (seed) config.seed = seed;
    if (threads) config.threads = *threads;
    const auto kind = experiment_kind_from_name(kind_name);
    const auto plan = config.plan();
    ExperimentReport report;
    {
        py::gil_scoped_release release;
        report = run_experiment(kind, plan);
    }
    auto doc = summary_json(report, config.echo());
    doc["rows"] = to_json(report.table(), {})["rows"];
    return doc.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Averaged stochastic-approximation kernel regression: estimators, rate functions, experiments";

    auto base = py::register_exception<Error>(m, "AvgsaError", PyExc_RuntimeError);
    auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", validation.ptr());
    auto numeric = py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<NonConvergence>(m, "NonConvergence", numeric.ptr());
    py::register_exception<RootNotBracketed>(m, "RootNotBracketed", numeric.ptr());
    py::register_exception<GridBoundary>(m, "GridBoundary", numeric.ptr());
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    (void)base;

    py::class_<Kernel>(m, "Kernel")
        .def(py::init([](const std::string& name) { return Kernel::from_name(name); }), py::arg("name"))
        .def_property_readonly("name", [](const Kernel& k) { return std::string(k.name()); })
        .def("__call__", &Kernel::evaluate, py::arg("z"))
        .def("constants", [](const Kernel& k) {
            const auto c = k.constants();
            py::dict d;
            d["squared_integral"] = c.squared_integral;
            d["second_moment"] = c.second_moment;
            d["support_measure_positive"] = c.support_measure_positive;
            return d;
        })
        .def("__repr__", [](const Kernel& k) { return "Kernel('" + std::string(k.name()) + "')"; });

    py::class_<ScheduleConfig>(m, "ScheduleConfig")
        .def(py::init([](double alpha, double a, double q, double c, double c_prime, double gamma0) {
                 return ScheduleConfig{alpha, a, q, c, c_prime, gamma0};
             }),
             py::arg("alpha") = 0.93, py::arg("a") = 0.3, py::arg("q") = 0.1, py::arg("c") = 1.0,
             py::arg("c_prime") = 1.0, py::arg("gamma0") = 1.0)
        .def_readwrite("alpha", &ScheduleConfig::alpha)
        .def_readwrite("a", &ScheduleConfig::a)
        .def_readwrite("q", &ScheduleConfig::q)
        .def_readwrite("c", &ScheduleConfig::c)
        .def_readwrite("c_prime", &ScheduleConfig::c_prime)
        .def_readwrite("gamma0", &ScheduleConfig::gamma0)
        .def("check", [](const ScheduleConfig& s) { return check_to_dict(s.check()); })
        .def("validate", &ScheduleConfig::validate)
        .def("stepsize", [](const ScheduleConfig& s, std::uint64_t n) { return s.stepsize().value(n); })
        .def("bandwidth", [](const ScheduleConfig& s, std::uint64_t n) { return s.bandwidth().value(n); })
        .def("weight", [](const ScheduleConfig& s, std::uint64_t n) { return s.weight().value(n); });

    m.def("validate_exponents",
          [](double alpha, double a, double q) { return check_to_dict(validate_exponents(alpha, a, q)); },
          py::arg("alpha"), py::arg("a"), py::arg("q"));

    py::class_<Model>(m, "Model")
        .def(py::init([](const std::string& name, double sigma, double y_const) {
                 return Model::from_name(name, sigma, y_const);
             }),
             py::arg("name"), py::arg("sigma") = 0.5, py::arg("y_const") = 3.0)
        .def_property_readonly("name", [](const Model& mdl) { return std::string(mdl.name()); })
        .def("truth", [](const Model& mdl, double x, const Kernel& k) {
            const auto t = mdl.truth(x, k);
            py::dict d;
            d["f"] = t.f;
            d["r"] = t.r;
            d["var"] = t.var;
            d["m2"] = t.m2;
            return d;
        }, py::arg("x"), py::arg("kernel"));

    py::class_<EstimatorState>(m, "EstimatorState")
        .def(py::init<std::vector<double>, ScheduleConfig, Kernel, double>(), py::arg("grid"), py::arg("schedule"),
             py::arg("kernel"), py::arg("r0") = 0.0)
        .def("update", [](EstimatorState& s, double x, double y) { s.update({x, y}); }, py::arg("x"), py::arg("y"))
        .def("update_many", [](EstimatorState& s, const std::vector<double>& xs, const std::vector<double>& ys) {
            for (const auto& obs : zip_observations(xs, ys)) s.update(obs);
        }, py::arg("xs"), py::arg("ys"))
        .def_property_readonly("count", &EstimatorState::count)
        .def_property_readonly("bandwidth", &EstimatorState::current_bandwidth)
        .def("revesz", [](const EstimatorState& s) {
            const auto v = s.revesz_values();
            return std::vector<double>(v.begin(), v.end());
        })
        .def("averaged", [](const EstimatorState& s) {
            std::vector<double> out(s.grid().size());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.averaged(i);
            return out;
        })
        .def("semi_recursive", [](const EstimatorState& s) {
            std::vector<double> out(s.grid().size());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.semi_recursive(i);
            return out;
        });

    m.def("nadaraya_watson",
          [](const std::vector<double>& xs, const std::vector<double>& ys, double h, double x, const Kernel& k) {
              const auto data = zip_observations(xs, ys);
              return nadaraya_watson(data, h, x, k);
          },
          py::arg("xs"), py::arg("ys"), py::arg("h"), py::arg("x"), py::arg("kernel"));

    py::class_<PsiContext>(m, "PsiContext")
        .def(py::init([](double a, double q, double x, const Model& mdl, const Kernel& k) {
                 return PsiContext(a, q, x, mdl, k);
             }),
             py::arg("a"), py::arg("q"), py::arg("x"), py::arg("model"), py::arg("kernel"))
        .def("with_centre", &PsiContext::with_centre, py::arg("centre"))
        .def("psi", &PsiContext::psi, py::arg("u"))
        .def("derivatives", [](const PsiContext& c, double u) {
            const auto d = c.derivatives(u);
            return py::make_tuple(d.psi1, d.psi2);
        }, py::arg("u"))
        .def("sign_structure", [](const PsiContext& c) {
            switch (c.sign_structure()) {
                case SignStructure::Mixed: return "mixed";
                case SignStructure::NonNegative: return "nonnegative";
                case SignStructure::NonPositive: return "nonpositive";
                case SignStructure::Degenerate: return "degenerate";
            }
            return "mixed";
        });

    m.def("rate_I", [](const PsiContext& c, double t) {
        const auto p = rate_I(c, t);
        py::dict d;
        d["value"] = p.value;
        d["u_star"] = p.u_star;
        d["psi_at_u_star"] = p.psi_at_u_star;
        return d;
    }, py::arg("ctx"), py::arg("t"));

    m.def("mdp_rate",
          [](const std::string& kind, double a, double q, double f, double var, const Kernel& k, double t) {
              return make_mdp_rate(estimator_kind(kind), a, q, f, var, k)(t);
          },
          py::arg("kind"), py::arg("a"), py::arg("q"), py::arg("f"), py::arg("var"), py::arg("kernel"), py::arg("t"));

    m.def("mdp_asymptotic_variance",
          [](const std::string& kind, double a, double q, double f, double var, const Kernel& k) {
              return make_mdp_rate(estimator_kind(kind), a, q, f, var, k).asymptotic_variance();
          },
          py::arg("kind"), py::arg("a"), py::arg("q"), py::arg("f"), py::arg("var"), py::arg("kernel"));

    m.def("bias_constant", &bias_constant, py::arg("a"), py::arg("q"));

    m.def("_run_experiment_json", &run_experiment_json, py::arg("kind"), py::arg("config_text"),
          py::arg("seed") = std::nullopt, py::arg("threads") = std::nullopt);
}

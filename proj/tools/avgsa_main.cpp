// avgsa command-line front end: validate, estimate, ratefn, mdp, simulate.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "avgsa/config.hpp"
#include "avgsa/error.hpp"
#include "avgsa/estimators.hpp"
#include "avgsa/experiments.hpp"
#include "avgsa/kernels.hpp"
#include "avgsa/models.hpp"
#include "avgsa/ratefn.hpp"
#include "avgsa/report.hpp"
#include "avgsa/rng.hpp"

namespace {

using namespace avgsa;

/// Flags shared by every subcommand; each one overrides the config file.
struct Overrides {
    std::string config_path;
    std::optional<double> alpha, a, q, c, c_prime, gamma0, sigma, y_const, r0;
    std::optional<std::string> model, kernel;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;

    void attach(CLI::App& app, bool with_seed) {
        app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
        app.add_option("--alpha", alpha, "stepsize exponent");
        app.add_option("--a", a, "bandwidth exponent");
        app.add_option("--q", q, "averaging weight exponent");
        app.add_option("--c", c, "bandwidth constant");
        app.add_option("--c-prime", c_prime, "weight constant");
        app.add_option("--gamma0", gamma0, "stepsize constant");
        app.add_option("--model", model, "uniform_quadratic_gauss|uniform_rademacher|constant_response");
        app.add_option("--sigma", sigma, "noise level of uniform_quadratic_gauss");
        app.add_option("--y-const", y_const, "response of constant_response");
        app.add_option("--kernel", kernel, "epanechnikov|uniform|gaussian");
        app.add_option("--r0", r0, "initial value of the recursive estimator");
        if (with_seed) {
            app.add_option("--seed", seed, "master seed");
            app.add_option("--threads", threads, "worker threads");
        }
    }

    RunConfig resolve(Command command) const {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        cfg.command = command;
        auto set = [](auto& field, const auto& value) {
            if (value) field = *value;
        };
        set(cfg.schedule.alpha, alpha);
        set(cfg.schedule.a, a);
        set(cfg.schedule.q, q);
        set(cfg.schedule.c, c);
        set(cfg.schedule.c_prime, c_prime);
        set(cfg.schedule.gamma0, gamma0);
        set(cfg.sigma, sigma);
        set(cfg.y_const, y_const);
        set(cfg.r0, r0);
        set(cfg.model, model);
        set(cfg.kernel, kernel);
        if (seed) cfg.seed = *seed;
        set(cfg.threads, threads);
        return cfg;
    }
};

struct Output {
    std::string path;
    bool json = false;

    void attach(CLI::App& app) {
        app.add_option("--out", path, "output file (stdout when omitted)");
        app.add_flag("--json", json, "emit JSON instead of CSV");
    }

    void write(const Table& table, const Meta& meta) const {
        const ReportFormat format = json ? ReportFormat::Json : ReportFormat::Csv;
        if (!path.empty()) {
            emit_report(table, meta, path, format);
            return;
        }
        if (json) std::cout << to_json(table, meta).dump(2) << '\n';
        else std::cout << to_csv(table);
        std::cout.flush();
    }
};

int run_validate(const RunConfig& cfg) {
    const ExponentCheck check = cfg.schedule.check();
    for (std::string_view name : schedule_constraints) {
        const Violation* hit = nullptr;
        for (const auto& v : check.violations)
            if (v.constraint == name) hit = &v;
        if (hit) std::cout << name << ": FAIL " << hit->message << '\n';
        else std::cout << name << ": pass\n";
    }
    for (const auto& w : check.warnings) std::cout << "warning: " << w << '\n';
    if (!check.ok()) {
        std::cout.flush();
        std::cerr << "error[validation]: " << check.violations.size() << " schedule constraint(s) violated\n";
        return static_cast<int>(ErrorCode::Validation);
    }
    Kernel::from_name(cfg.kernel);
    Model::from_name(cfg.model, cfg.sigma, cfg.y_const);
    return 0;
}

int run_estimate(const RunConfig& cfg, std::uint64_t n, const GridSpec& grid, const Output& out) {
    cfg.validate();
    if (!cfg.seed) throw ValidationError("estimate needs --seed");
    if (n < 1) throw ValidationError("--n must be >= 1");
    const Model model = Model::from_name(cfg.model, cfg.sigma, cfg.y_const);
    const Kernel kernel = Kernel::from_name(cfg.kernel);
    const std::vector<double> xs = grid.points();

    Rng rng = make_stream(*cfg.seed, 0);
    Sampler sampler(model);
    EstimatorState state(xs, cfg.schedule, kernel, cfg.r0);
    std::vector<Observation> data;
    data.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        data.push_back(sampler(rng));
        state.update(data.back());
    }
    const double h = cfg.schedule.bandwidth().value(n);

    Table table{{"x", "r_n", "r_avg", "nw", "semi_rec", "true_r"}, {}};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        table.rows.push_back({xs[i], state.revesz(i), state.averaged(i), nadaraya_watson(data, h, xs[i], kernel),
                              state.semi_recursive(i), model.regression(xs[i])});
    }
    Meta meta = cfg.echo();
    meta.emplace_back("n", std::to_string(n));
    out.write(table, meta);
    return 0;
}

int run_ratefn(const RunConfig& cfg, double x, const GridSpec& t_grid, const Output& out) {
    const Model model = Model::from_name(cfg.model, cfg.sigma, cfg.y_const);
    const PsiContext ctx(cfg.schedule.a, cfg.schedule.q, x, model, Kernel::from_name(cfg.kernel), cfg.quadrature);
    Table table{{"t", "I", "u_star", "psi_at_ustar"}, {}};
    for (double t : t_grid.points()) {
        const RatePoint p = rate_I(ctx, t);
        table.rows.push_back({t, p.value, p.u_star, p.psi_at_u_star});
    }
    Meta meta = cfg.echo();
    meta.emplace_back("x", format_number(x));
    out.write(table, meta);
    return 0;
}

int run_mdp(const RunConfig& cfg, double x, const GridSpec& t_grid, const Output& out) {
    const Model model = Model::from_name(cfg.model, cfg.sigma, cfg.y_const);
    const Kernel kernel = Kernel::from_name(cfg.kernel);
    const Truth truth = model.truth(x, kernel);
    const double a = cfg.schedule.a;
    const double q = cfg.schedule.q;
    const auto avg = make_mdp_rate(EstimatorKind::Averaged, a, q, truth.f, truth.var, kernel);
    const auto nw = make_mdp_rate(EstimatorKind::NadarayaWatson, a, q, truth.f, truth.var, kernel);
    const auto semi = make_mdp_rate(EstimatorKind::SemiRecursive, a, q, truth.f, truth.var, kernel);
    Table table{{"t", "J_avg", "J_nw", "J_semirec"}, {}};
    for (double t : t_grid.points()) table.rows.push_back({t, avg(t), nw(t), semi(t)});
    Meta meta = cfg.echo();
    meta.emplace_back("x", format_number(x));
    out.write(table, meta);
    return 0;
}

int run_simulate(const RunConfig& cfg, const std::string& experiment, const std::string& csv_path,
                 const std::string& summary_path) {
    const ExperimentKind kind = experiment_kind_from_name(experiment);
    const ExperimentPlan plan = cfg.plan();
    const ExperimentReport report = run_experiment(kind, plan);

    Meta meta = cfg.echo();
    meta.emplace_back("experiment", std::string(to_string(kind)));
    emit_report(report.table(), meta, csv_path, ReportFormat::Csv);
    if (!summary_path.empty()) write_text(summary_path, summary_json(report, meta).dump(2) + "\n");

    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& c : report.checks) {
        std::cout << c.name << " x=" << format_number(c.x) << " n=" << c.n
                  << " estimate=" << format_number(c.estimate) << " se=" << format_number(c.standard_error)
                  << " target=" << format_number(c.target) << (c.pass ? " pass" : " FAIL") << '\n';
    }
    return 0;
}

std::string one_line(std::string text) {
    for (auto& ch : text)
        if (ch == '\n' || ch == '\r') ch = ';';
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Averaged stochastic-approximation kernel regression"};
    app.require_subcommand(1);

    Overrides overrides;
    Output output;

    auto* validate = app.add_subcommand("validate", "check schedule exponents");
    overrides.attach(*validate, false);

    std::uint64_t n = 0;
    std::string grid_text;
    auto* estimate = app.add_subcommand("estimate", "run the estimators on one simulated sample");
    overrides.attach(*estimate, true);
    output.attach(*estimate);
    estimate->add_option("--n", n, "sample size")->required();
    estimate->add_option("--grid", grid_text, "evaluation grid lo:hi:steps")->required();

    double x = 0.5;
    std::string t_text;
    auto* ratefn = app.add_subcommand("ratefn", "tabulate the large-deviation rate function");
    overrides.attach(*ratefn, false);
    output.attach(*ratefn);
    ratefn->add_option("--x", x, "evaluation point")->required();
    ratefn->add_option("--t", t_text, "t grid lo:hi:steps")->required();

    std::string mdp_t_text = "-2:2:8";
    auto* mdp = app.add_subcommand("mdp", "tabulate the moderate-deviation rate functions");
    overrides.attach(*mdp, false);
    output.attach(*mdp);
    mdp->add_option("--x", x, "evaluation point")->required();
    mdp->add_option("--t", mdp_t_text, "t grid lo:hi:steps")->capture_default_str();

    std::string experiment;
    std::string csv_path;
    std::string summary_path;
    auto* simulate = app.add_subcommand("simulate", "run a Monte Carlo experiment");
    overrides.attach(*simulate, true);
    simulate->add_option("--experiment", experiment, "bias|variance|tail|mdp")->required();
    simulate->add_option("--out", csv_path, "CSV report path")->required();
    simulate->add_option("--json", summary_path, "JSON summary path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[usage]: " << one_line(e.what()) << '\n';
        return static_cast<int>(ErrorCode::Validation);
    }

    try {
        if (validate->parsed()) return run_validate(overrides.resolve(Command::Validate));
        if (estimate->parsed())
            return run_estimate(overrides.resolve(Command::Estimate), n, GridSpec::parse(grid_text), output);
        if (ratefn->parsed()) {
            RunConfig cfg = overrides.resolve(Command::Ratefn);
            return run_ratefn(cfg, x, GridSpec::parse(t_text), output);
        }
        if (mdp->parsed()) return run_mdp(overrides.resolve(Command::Mdp), x, GridSpec::parse(mdp_t_text), output);
        if (simulate->parsed())
            return run_simulate(overrides.resolve(Command::Simulate), experiment, csv_path, summary_path);
    } catch (const Error& e) {
        std::cerr << "error[" << e.tag() << "]: " << one_line(e.what()) << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << one_line(e.what()) << '\n';
        return 1;
    }
    return 0;
}

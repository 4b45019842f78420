// Acceptance checks. Usage: acceptance <id>|all, where id is 1..11 or 4-degenerate.
// Prints one line per criterion; exits 1 if any printed line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "avgsa/error.hpp"
#include "avgsa/experiments.hpp"
#include "avgsa/ratefn.hpp"
#include "oracles/brute_force.hpp"
#include "oracles/moment_recursion.hpp"

using namespace avgsa;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

PsiContext cosh_context() {
    return PsiContext(0.3, 0.3, 0.5, Model::uniform_rademacher(), Kernel(KernelKind::Uniform));
}

/// Richardson-extrapolated central differences of psi at u.
std::pair<double, double> fd_derivatives(const PsiContext& ctx, double u) {
    auto d1 = [&](double h) { return (ctx.psi(u + h) - ctx.psi(u - h)) / (2 * h); };
    auto d2 = [&](double h) { return (ctx.psi(u + h) - 2 * ctx.psi(u) + ctx.psi(u - h)) / (h * h); };
    const double h = 1e-2;
    return {(4 * d1(h / 2) - d1(h)) / 3, (4 * d2(h / 2) - d2(h)) / 3};
}

Outcome criterion_1() {
    const auto start = Clock::now();
    const auto ctx = cosh_context();
    double worst = 0.0;
    for (int u = -3; u <= 3; ++u) worst = std::max(worst, std::abs(ctx.psi(u) - (std::cosh(u) - 1.0)));
    const double elapsed = seconds_since(start);
    return {worst < 1e-8 && elapsed < 1.0,
            fmt("max |psi(u) - (cosh u - 1)| = %.3e (tol 1e-8), %.3f s (limit 1 s)", worst, elapsed)};
}

Outcome criterion_2() {
    const auto start = Clock::now();
    const auto ctx = cosh_context();
    const LegendreOracle table([&](double u) { return ctx.psi(u); }, -4.0, 4.0, 161);
    double worst_oracle = 0.0, worst_closed = 0.0;
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const double value = rate_I(ctx, t).value;
        worst_oracle = std::max(worst_oracle, std::abs(value - table(t)));
        worst_closed = std::max(worst_closed, std::abs(value - oracle::cosh_rate(t)));
    }
    const double i1 = rate_I(ctx, 1.0).value;
    const double elapsed = seconds_since(start);
    const bool pass = worst_oracle < 1e-6 && worst_closed < 1e-6 && std::abs(i1 - 0.4671600) < 1e-6 && elapsed < 1.0;
    return {pass, fmt("max |I - conjugate| = %.3e, max |I - closed form| = %.3e (tol 1e-6), I(1) = %.7f, %.3f s",
                      worst_oracle, worst_closed, i1, elapsed)};
}

Outcome criterion_3() {
    const std::vector<PsiContext> contexts{
        cosh_context(),
        PsiContext(0.3, 0.1, 0.5, Model::uniform_quadratic_gauss(0.5), Kernel(KernelKind::Epanechnikov)),
        PsiContext(0.3, 0.1, 0.4, Model::uniform_rademacher(), Kernel(KernelKind::Gaussian)),
    };
    double worst = 0.0;
    for (const auto& ctx : contexts) {
        for (double u = -3.0; u <= 3.0; u += 0.5) {
            const auto [fd1, fd2] = fd_derivatives(ctx, u);
            const auto d = ctx.derivatives(u);
            worst = std::max(worst, std::abs(d.psi1 - fd1) / std::max(std::abs(fd1), 1e-3));
            worst = std::max(worst, std::abs(d.psi2 - fd2) / std::max(std::abs(fd2), 1e-3));
        }
    }
    double worst_inverse = 0.0;
    const PsiContext ctx(0.3, 0.1, 0.5, Model::uniform_rademacher(), Kernel(KernelKind::Epanechnikov));
    for (double t : {0.25, 0.5, 1.0}) {
        const double step = 1e-4;
        const double slope = (rate_I(ctx, t + step).value - rate_I(ctx, t - step).value) / (2 * step);
        const double u_star = rate_I(ctx, t).u_star;
        worst_inverse = std::max(worst_inverse, std::abs(slope - u_star) / std::abs(u_star));
    }
    return {worst < 1e-5 && worst_inverse < 1e-4,
            fmt("psi', psi'' vs differences: max rel %.3e (tol 1e-5); I'(t) vs (psi')^-1(t): max rel %.3e (tol 1e-4)",
                worst, worst_inverse)};
}

struct SweepResult {
    int combos = 0;
    double worst_psi0 = 0.0;
    double worst_slope0 = 0.0;
    int convex_combos = 0;
    int convex_ok = 0;
};

SweepResult sweep(bool degenerate_only) {
    SweepResult r;
    const std::vector<Model> models{Model::uniform_quadratic_gauss(0.5), Model::uniform_rademacher(),
                                    Model::constant_response(3.0)};
    for (const auto& model : models) {
        const bool degenerate = model.kind() == ModelKind::ConstantResponse;
        if (degenerate_only && !degenerate) continue;
        for (auto kind : {KernelKind::Uniform, KernelKind::Epanechnikov, KernelKind::Gaussian}) {
            for (double a : {0.2, 0.3}) {
                for (double q : {0.0, 0.1}) {
                    const PsiContext ctx(a, q, 0.5, model, Kernel(kind));
                    ++r.combos;
                    r.worst_psi0 = std::max(r.worst_psi0, std::abs(ctx.psi(0.0)));
                    r.worst_slope0 = std::max(r.worst_slope0, std::abs(ctx.derivatives(0.0).psi1));
                    if (degenerate != degenerate_only) continue;
                    ++r.convex_combos;
                    bool convex = true;
                    for (double u = -5.0; u <= 5.0; u += 1.0) convex = convex && ctx.derivatives(u).psi2 > 0.0;
                    r.convex_ok += convex ? 1 : 0;
                }
            }
        }
    }
    return r;
}

Outcome criterion_4() {
    const auto r = sweep(false);
    const bool pass = r.worst_psi0 == 0.0 && r.worst_slope0 < 1e-9 && r.convex_ok == r.convex_combos;
    return {pass, fmt("%d combos: max |psi(0)| = %.1e, max |psi'(0)| = %.3e (tol 1e-9); psi'' > 0 on u = -5..5 "
                      "for %d/%d non-degenerate combos",
                      r.combos, r.worst_psi0, r.worst_slope0, r.convex_ok, r.convex_combos)};
}

Outcome criterion_4_degenerate() {
    const auto r = sweep(true);
    return {r.convex_ok == r.convex_combos,
            fmt("constant response: psi'' > 0 on u = -5..5 for %d/%d combos (psi is identically 0)", r.convex_ok,
                r.convex_combos)};
}

Outcome criterion_5() {
    const Kernel k(KernelKind::Epanechnikov);
    const double avg = make_mdp_rate(EstimatorKind::Averaged, 0.25, 0.25, 1.0, 1.0, k)(1.0);
    const double nw = make_mdp_rate(EstimatorKind::NadarayaWatson, 0.25, 0.25, 1.0, 1.0, k)(1.0);
    const double semi = make_mdp_rate(EstimatorKind::SemiRecursive, 0.25, 0.25, 1.0, 1.0, k)(1.0);
    const bool values = std::abs(avg - 10.0 / 9.0) < 1e-9 && std::abs(nw - 5.0 / 6.0) < 1e-9 &&
                        std::abs(semi - 25.0 / 24.0) < 1e-9;
    int ordered = 0, total = 0;
    for (int i = 1; i <= 9; ++i) {
        const double a = 0.05 * i;
        const double ja = make_mdp_rate(EstimatorKind::Averaged, a, a, 1.0, 1.0, k)(1.0);
        const double js = make_mdp_rate(EstimatorKind::SemiRecursive, a, a, 1.0, 1.0, k)(1.0);
        const double jn = make_mdp_rate(EstimatorKind::NadarayaWatson, a, a, 1.0, 1.0, k)(1.0);
        ++total;
        ordered += (ja > js && js > jn) ? 1 : 0;
    }
    return {values && ordered == total,
            fmt("J(1) = %.10f / %.10f / %.10f (tol 1e-9); ordering holds for %d/%d values of a", avg, nw, semi,
                ordered, total)};
}

Outcome criterion_6() {
    const PsiContext constant(0.3, 0.1, 0.5, Model::constant_response(3.0), Kernel(KernelKind::Epanechnikov));
    const auto one_sided = constant.with_centre(2.0);
    const double i0 = rate_I(one_sided, 0.0).value;
    const PsiContext rad(0.3, 0.1, 0.5, Model::uniform_rademacher(), Kernel(KernelKind::Epanechnikov));
    const double r0 = rate_I(rad, 0.0).value;
    const bool pass = one_sided.sign_structure() == SignStructure::NonNegative && std::abs(i0 - 2.5714286) < 1e-7 &&
                      std::abs(i0 - 18.0 / 7.0) < 1e-9 && std::abs(r0) < 1e-9;
    return {pass, fmt("one-sided law: I(0) = %.10f (expected 18/7 = 2.5714286, tol 1e-9); Rademacher: I(0) = %.3e",
                      i0, r0)};
}

ExperimentPlan oracle_plan(unsigned threads) {
    ExperimentPlan p;
    p.model = Model::uniform_quadratic_gauss(0.5);
    p.kernel = Kernel(KernelKind::Epanechnikov);
    p.schedule.alpha = 0.93;
    p.schedule.a = 0.3;
    p.schedule.q = 0.1;
    p.schedule.c = 2.0;
    p.schedule.c_prime = 1.0;
    p.schedule.gamma0 = 4.0;
    p.x_points = {0.5};
    p.n_list = {1000, 10000, 100000};
    p.replicates = 2000;
    p.master_seed = 20240501;
    p.threads = threads;
    return p;
}

double finite_n_exact(bool bias) {
    const auto m = oracle::averaged_moments({0.93, 4.0, 0.3, 2.0, 0.1, 1.0, 0.5, 0.25}, {100000});
    const double h = 2.0 * std::pow(1e5, -0.3);
    return bias ? m[0].bias / (h * h) : 1e5 * h * m[0].variance;
}

Outcome criterion_7() {
    const auto start = Clock::now();
    const auto report = run_bias_experiment(oracle_plan(8));
    const auto& c = report.cells.back();
    const double rel = std::abs(c.bias_ratio / 0.6 - 1.0);
    return {rel <= 0.15, fmt("n = 1e5, 2000 replicates: bias_ratio = %.4f +- %.4f vs 0.6 (rel err %.3f, tol 0.15; "
                             "exact finite-n value %.4f), %.1f s",
                             c.bias_ratio, c.bias_ratio_se, rel, finite_n_exact(true), seconds_since(start))};
}

Outcome criterion_8() {
    const auto start = Clock::now();
    const auto report = run_variance_experiment(oracle_plan(8));
    const auto& c = report.cells.back();
    const double rel = std::abs(c.variance_scaled / 0.1104545 - 1.0);
    return {rel <= 0.10,
            fmt("n = 1e5, 2000 replicates: n h Var = %.5f +- %.5f vs 0.1104545 (rel err %.3f, tol 0.10; "
                "exact finite-n value %.5f), %.1f s",
                c.variance_scaled, c.variance_scaled_se, rel, finite_n_exact(false), seconds_since(start))};
}

Outcome criterion_9() {
    const Model model = Model::constant_response(3.0);
    ScheduleConfig s = oracle_plan(1).schedule;
    EstimatorState state({0.25, 0.5, 0.75}, s, Kernel(KernelKind::Epanechnikov), 3.0);
    Rng rng = make_stream(9, 0);
    Sampler sampler(model);
    std::size_t nonzero = 0;
    for (int i = 0; i < 10000; ++i) {
        state.update(sampler(rng));
        for (std::size_t g = 0; g < 3; ++g) {
            nonzero += state.revesz(g) != 3.0;
            nonzero += state.averaged(g) != 3.0;
        }
    }
    return {nonzero == 0, fmt("10^4 steps at r0 = y_const: %zu nonzero errors", nonzero)};
}

Outcome criterion_10() {
    const auto start = Clock::now();
    const std::string one = to_csv(run_variance_experiment(oracle_plan(1)).table());
    const std::string eight = to_csv(run_variance_experiment(oracle_plan(8)).table());
    return {one == eight && !one.empty(),
            fmt("variance CSV with 1 and 8 threads: %s (%zu bytes), %.1f s", one == eight ? "identical" : "DIFFERENT",
                one.size(), seconds_since(start))};
}

Outcome criterion_11() {
    const auto start = Clock::now();
    ExperimentPlan p;
    p.model = Model::uniform_rademacher();
    p.kernel = Kernel(KernelKind::Uniform);
    p.schedule.alpha = 0.93;
    p.schedule.a = 0.3;
    p.schedule.q = 0.3;
    p.schedule.c = 0.1;
    p.schedule.c_prime = 1.0;
    p.schedule.gamma0 = 0.2;
    p.x_points = {0.5};
    p.n_list = {2000, 10000, 50000};
    p.replicates = 4000;
    p.tail_thresholds = {0.2};
    p.threads = 8;

    int pairs = 0, decreasing = 0;
    std::string rows;
    double rate = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        p.master_seed = seed;
        const auto report = run_tail_experiment(p);
        rate = report.tails.front().rate;
        rows += fmt(" seed %llu:", static_cast<unsigned long long>(seed));
        for (std::size_t i = 0; i < report.tails.size(); ++i) {
            const auto& c = report.tails[i];
            rows += fmt(" %s%.4f", c.lower_bound ? ">=" : "", c.tail_logprob);
            if (i > 0) {
                const auto& prev = report.tails[i - 1];
                ++pairs;
                decreasing += std::abs(c.tail_logprob - rate) < std::abs(prev.tail_logprob - rate) ? 1 : 0;
            }
        }
        rows += ";";
    }
    const bool pass = 3 * decreasing >= 2 * pairs;
    return {pass, fmt("I(0.2) = %.5f; |gap| decreases in %d/%d consecutive pairs (need 2/3), %.1f s; tail_logprob "
                      "at n = 2e3, 1e4, 5e4:",
                      rate, decreasing, pairs, seconds_since(start)) +
                      rows};
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<std::string, std::function<Outcome()>> criteria{
        {"1", criterion_1},   {"2", criterion_2},   {"3", criterion_3},
        {"4", criterion_4},   {"4-degenerate", criterion_4_degenerate},
        {"5", criterion_5},   {"6", criterion_6},   {"7", criterion_7},
        {"8", criterion_8},   {"9", criterion_9},   {"10", criterion_10},
        {"11", criterion_11},
    };
    const std::vector<std::string> order{"1", "2", "3", "4", "4-degenerate", "5", "6", "7", "8", "9", "10", "11"};
    std::vector<std::string> selected;
    const std::string arg = argc > 1 ? argv[1] : "all";
    if (arg == "all") selected = order;
    else if (criteria.count(arg)) selected = {arg};
    else {
        std::fprintf(stderr, "usage: acceptance <1..11|4-degenerate|all>\n");
        return 2;
    }

    bool all = true;
    for (const auto& id : selected) {
        Outcome o{false, ""};
        try {
            o = criteria.at(id)();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        std::printf("criterion %-12s %s  %s\n", id.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}

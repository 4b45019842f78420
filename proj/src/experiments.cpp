#include "avgsa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "avgsa/error.hpp"
#include "avgsa/ratefn.hpp"
#include "avgsa/rng.hpp"

namespace avgsa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kBootstrapResamples = 400;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

/// Moments of a sample, accumulated in index order.
struct Summary {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double variance_se = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

Summary summarise_sample(std::span<const double> v) {
    const auto count = static_cast<double>(v.size());
    Summary s;
    for (double x : v) s.mean += x;
    s.mean /= count;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= count;
    m3 /= count;
    m4 /= count;
    s.variance = m2 * count / (count - 1.0);
    // Var of the sample variance: (m4 - (n-3)/(n-1) s^4) / n.
    const double var_of_var = (m4 - (count - 3.0) / (count - 1.0) * s.variance * s.variance) / count;
    s.variance_se = std::sqrt(std::max(var_of_var, 0.0));
    if (m2 > 0.0) {
        s.skewness = m3 / std::pow(m2, 1.5);
        s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return s;
}

double sample_variance(std::span<const double> v, std::span<const std::size_t> idx) {
    double mean = 0.0;
    for (std::size_t i : idx) mean += v[i];
    mean /= static_cast<double>(idx.size());
    double ss = 0.0;
    for (std::size_t i : idx) ss += (v[i] - mean) * (v[i] - mean);
    return ss / static_cast<double>(idx.size() - 1);
}

double lower_quantile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    const auto k = static_cast<std::size_t>(std::floor(p * static_cast<double>(values.size())));
    return values[std::min(k, values.size() - 1)];
}

/// 2.5% bootstrap quantiles of var(semi)/var(avg) and var(nw)/var(semi),
/// resampling replicates jointly.
std::pair<double, double> bootstrap_ratio_bands(std::span<const double> avg, std::span<const double> semi,
                                                std::span<const double> nw, std::uint64_t seed,
                                                std::uint64_t cell) {
    Rng rng = make_stream(seed ^ 0xb0075742a9d1e3c5ULL, cell);
    std::uniform_int_distribution<std::size_t> pick(0, avg.size() - 1);
    std::vector<std::size_t> idx(avg.size());
    std::vector<double> semi_over_avg, nw_over_semi;
    semi_over_avg.reserve(kBootstrapResamples);
    nw_over_semi.reserve(kBootstrapResamples);
    for (std::size_t b = 0; b < kBootstrapResamples; ++b) {
        for (auto& i : idx) i = pick(rng);
        const double va = sample_variance(avg, idx);
        const double vs = sample_variance(semi, idx);
        const double vn = sample_variance(nw, idx);
        semi_over_avg.push_back(va > 0.0 ? vs / va : kNaN);
        nw_over_semi.push_back(vs > 0.0 ? vn / vs : kNaN);
    }
    auto band = [](std::vector<double> r) {
        if (std::any_of(r.begin(), r.end(), [](double x) { return std::isnan(x); })) return kNaN;
        return lower_quantile(std::move(r), 0.025);
    };
    return {band(std::move(semi_over_avg)), band(std::move(nw_over_semi))};
}

OracleCheck make_check(std::string name, double x, std::uint64_t n, double estimate, double se, double target,
                       double tolerance) {
    bool pass;
    if (target != 0.0) {
        pass = std::abs(estimate / target - 1.0) <= tolerance;
    } else {
        pass = se > 0.0 ? std::abs(estimate) <= 3.0 * se : estimate == 0.0;
    }
    return {std::move(name), x, n, estimate, se, target, tolerance, pass};
}

std::vector<double> column(const ReplicateTable& table, std::size_t xi, std::size_t ni,
                           double EstimatePoint::*field) {
    std::vector<double> out(table.replicates());
    for (std::size_t r = 0; r < table.replicates(); ++r) out[r] = table.at(r, xi, ni).*field;
    return out;
}

}  // namespace

ExperimentKind experiment_kind_from_name(std::string_view name) {
    if (name == "bias") return ExperimentKind::Bias;
    if (name == "variance") return ExperimentKind::Variance;
    if (name == "tail") return ExperimentKind::Tail;
    if (name == "mdp") return ExperimentKind::Mdp;
    throw ParseError("unknown experiment '" + std::string(name) + "' (expected bias|variance|tail|mdp)");
}

std::string_view to_string(ExperimentKind kind) noexcept {
    switch (kind) {
        case ExperimentKind::Bias: return "bias";
        case ExperimentKind::Variance: return "variance";
        case ExperimentKind::Tail: return "tail";
        case ExperimentKind::Mdp: return "mdp";
    }
    return "bias";
}

bool moderate_scaling_admissible(double v_exponent, double a) noexcept {
    return v_exponent > 0.0 && v_exponent < (1.0 - a) / 2.0 && v_exponent < 2.0 * a;
}

double bias_constant(double a, double q) noexcept { return (1.0 - q) / (1.0 - q - 2.0 * a); }

std::vector<std::string> ExperimentPlan::validate(ExperimentKind kind) const {
    schedule.validate();
    quadrature.validate();
    if (x_points.empty()) throw ValidationError("x_points is empty");
    for (double x : x_points)
        if (!(x > 0.0 && x < 1.0)) throw ValidationError("x = " + fmt(x) + " is outside (0, 1)");
    if (n_list.empty()) throw ValidationError("n_list is empty");
    if (n_list.front() < 1) throw ValidationError("n_list entries must be >= 1");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) throw ValidationError("n_list must be strictly increasing");
    if (replicates < 2) throw ValidationError("replicates must be >= 2");
    if (threads < 1) throw ValidationError("threads must be >= 1");
    if (!std::isfinite(r0)) throw ValidationError("r0 must be finite");

    std::vector<std::string> warnings;
    for (double x : x_points)
        if (x < 0.2 || x > 0.8)
            warnings.push_back("x = " + fmt(x) + " lies outside (0.2, 0.8); boundary effects may bias the checks");

    switch (kind) {
        case ExperimentKind::Bias: {
            const bool any = std::any_of(x_points.begin(), x_points.end(),
                                         [&](double x) { return model.m2(x, kernel) != 0.0; });
            if (!any) warnings.push_back("m2 vanishes at every x; the bias check is trivial");
            break;
        }
        case ExperimentKind::Variance:
            for (double x : x_points)
                if (model.cond_var(x) == 0.0)
                    warnings.push_back("Var[Y|X] vanishes at x = " + fmt(x) + "; the variance check is trivial");
            break;
        case ExperimentKind::Tail:
            if (tail_thresholds.empty()) throw ValidationError("tail experiment needs tail_thresholds");
            for (double t : tail_thresholds)
                if (!std::isfinite(t)) throw ValidationError("tail thresholds must be finite");
            if (!(schedule.q <= schedule.a))
                throw ValidationError("tail experiment needs q <= a (the rate function is infinite otherwise)");
            break;
        case ExperimentKind::Mdp:
            if (!moderate_scaling_admissible(v_exponent, schedule.a)) {
                const double bound = std::min((1.0 - schedule.a) / 2.0, 2.0 * schedule.a);
                throw ValidationError("v_exponent = " + fmt(v_exponent) + " must lie in (0, " + fmt(bound) +
                                      "): need v_n -> inf, v_n^2/(n h_n) -> 0 and v_n h_n^2 -> 0");
            }
            break;
    }
    return warnings;
}

ReplicateTable::ReplicateTable(std::size_t replicates, std::size_t x_count, std::size_t n_count)
    : replicates_(replicates),
      x_count_(x_count),
      n_count_(n_count),
      data_(replicates * x_count * n_count, EstimatePoint{}) {}

EstimatePoint& ReplicateTable::at(std::size_t rep, std::size_t xi, std::size_t ni) {
    return data_.at((rep * x_count_ + xi) * n_count_ + ni);
}

const EstimatePoint& ReplicateTable::at(std::size_t rep, std::size_t xi, std::size_t ni) const {
    return data_.at((rep * x_count_ + xi) * n_count_ + ni);
}

std::span<EstimatePoint> ReplicateTable::replicate(std::size_t rep) {
    return std::span<EstimatePoint>(data_).subspan(rep * x_count_ * n_count_, x_count_ * n_count_);
}

void run_replicate(const ExperimentPlan& plan, std::size_t index, std::span<EstimatePoint> out) {
    const std::size_t xs = plan.x_points.size();
    const std::size_t ns = plan.n_list.size();
    if (out.size() != xs * ns) throw ValidationError("replicate output span has the wrong size");

    Rng rng = make_stream(plan.master_seed, index);
    Sampler sampler(plan.model);
    EstimatorState state(plan.x_points, plan.schedule, plan.kernel, plan.r0);
    std::vector<Observation> data;
    data.reserve(plan.n_list.back());

    std::size_t next = 0;
    for (std::uint64_t n = 1; next < ns; ++n) {
        const Observation obs = sampler(rng);
        data.push_back(obs);
        state.update(obs);
        if (n != plan.n_list[next]) continue;
        const double h = plan.schedule.bandwidth().value(n);
        for (std::size_t xi = 0; xi < xs; ++xi) {
            out[xi * ns + next] = {state.averaged(xi), state.revesz(xi), state.semi_recursive(xi),
                                   nadaraya_watson(data, h, plan.x_points[xi], plan.kernel)};
        }
        ++next;
    }
}

ReplicateTable simulate_replicates(const ExperimentPlan& plan) {
    ReplicateTable table(plan.replicates, plan.x_points.size(), plan.n_list.size());
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(std::max(plan.threads, 1u), plan.replicates));

    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t r = cursor.fetch_add(1);
            if (r >= plan.replicates) return;
            try {
                run_replicate(plan, r, table.replicate(r));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                cursor.store(plan.replicates);
                return;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return table;
}

namespace {

void fill_moment_cells(ExperimentReport& report, const ExperimentPlan& plan, const ReplicateTable& table) {
    const auto& sched = plan.schedule;
    for (std::size_t xi = 0; xi < plan.x_points.size(); ++xi) {
        const double x = plan.x_points[xi];
        const Truth truth = plan.model.truth(x, plan.kernel);
        const double oracle_bias = bias_constant(sched.a, sched.q) * truth.m2;
        const double oracle_var =
            make_mdp_rate(EstimatorKind::Averaged, sched.a, sched.q, truth.f, truth.var, plan.kernel)
                .asymptotic_variance();
        for (std::size_t ni = 0; ni < plan.n_list.size(); ++ni) {
            const std::uint64_t n = plan.n_list[ni];
            const double h = sched.bandwidth().value(n);
            const double nh = static_cast<double>(n) * h;
            auto avg = column(table, xi, ni, &EstimatePoint::averaged);
            for (auto& v : avg) v -= truth.r;
            const auto semi = column(table, xi, ni, &EstimatePoint::semi_recursive);
            const auto nw = column(table, xi, ni, &EstimatePoint::nadaraya_watson);

            const Summary s = summarise_sample(avg);
            const double mean_se = std::sqrt(s.variance / static_cast<double>(avg.size()));
            CellStats c{};
            c.x = x;
            c.n = n;
            c.bandwidth = h;
            c.true_r = truth.r;
            c.mean_error = s.mean;
            c.mean_error_se = mean_se;
            c.bias_ratio = s.mean / (h * h);
            c.bias_ratio_se = mean_se / (h * h);
            c.oracle_bias_ratio = oracle_bias;
            c.variance_scaled = nh * s.variance;
            c.variance_scaled_se = nh * s.variance_se;
            c.oracle_variance = oracle_var;
            c.var_averaged = s.variance;
            c.var_semi_recursive = summarise_sample(semi).variance;
            c.var_nadaraya_watson = summarise_sample(nw).variance;
            if (report.kind == ExperimentKind::Variance) {
                const auto [lo_sa, lo_ns] =
                    bootstrap_ratio_bands(avg, semi, nw, plan.master_seed, xi * plan.n_list.size() + ni);
                c.semi_over_averaged_lo = lo_sa;
                c.nw_over_semi_lo = lo_ns;
            } else {
                c.semi_over_averaged_lo = kNaN;
                c.nw_over_semi_lo = kNaN;
            }
            report.cells.push_back(c);
        }
    }
}

void summarise_bias(ExperimentReport& report, const ExperimentPlan& plan, const ReplicateTable& table) {
    fill_moment_cells(report, plan, table);
    const std::size_t ns = plan.n_list.size();
    for (std::size_t xi = 0; xi < plan.x_points.size(); ++xi) {
        const CellStats& c = report.cells[xi * ns + ns - 1];
        report.checks.push_back(
            make_check("bias_ratio", c.x, c.n, c.bias_ratio, c.bias_ratio_se, c.oracle_bias_ratio, 0.15));
    }
}

void summarise_variance(ExperimentReport& report, const ExperimentPlan& plan, const ReplicateTable& table) {
    fill_moment_cells(report, plan, table);
    const std::size_t ns = plan.n_list.size();
    for (std::size_t xi = 0; xi < plan.x_points.size(); ++xi) {
        const CellStats& c = report.cells[xi * ns + ns - 1];
        report.checks.push_back(make_check("variance_scaled", c.x, c.n, c.variance_scaled, c.variance_scaled_se,
                                           c.oracle_variance, 0.10));
        if (c.var_averaged > 0.0) {
            const double lo = std::min(c.semi_over_averaged_lo, c.nw_over_semi_lo);
            report.checks.push_back({"variance_ordering", c.x, c.n, lo, kNaN, 1.0, 0.0, lo > 1.0});
        }
    }
}

void summarise_tail(ExperimentReport& report, const ExperimentPlan& plan, const ReplicateTable& table) {
    const auto& sched = plan.schedule;
    const auto reps = static_cast<double>(plan.replicates);
    for (std::size_t xi = 0; xi < plan.x_points.size(); ++xi) {
        const double x = plan.x_points[xi];
        const double r = plan.model.regression(x);
        const PsiContext ctx(sched.a, sched.q, x, plan.model, plan.kernel, plan.quadrature);
        for (double t : plan.tail_thresholds) {
            const double rate = plan.two_sided
                                    ? std::min(rate_I(ctx, std::abs(t)).value, rate_I(ctx, -std::abs(t)).value)
                                    : rate_I(ctx, t).value;
            std::vector<double> gaps;
            for (std::size_t ni = 0; ni < plan.n_list.size(); ++ni) {
                const std::uint64_t n = plan.n_list[ni];
                const double nh = static_cast<double>(n) * sched.bandwidth().value(n);
                std::uint64_t hits = 0;
                for (std::size_t rep = 0; rep < plan.replicates; ++rep) {
                    const double e = table.at(rep, xi, ni).averaged - r;
                    const bool hit = plan.two_sided ? std::abs(e) >= std::abs(t) : (t >= 0.0 ? e >= t : e <= t);
                    hits += hit ? 1 : 0;
                }
                TailCell c{};
                c.x = x;
                c.n = n;
                c.threshold = t;
                c.exceedances = hits;
                c.frequency = static_cast<double>(hits) / reps;
                c.frequency_se = std::sqrt(c.frequency * (1.0 - c.frequency) / reps);
                c.lower_bound = hits == 0;
                const double p = c.lower_bound ? 1.0 / reps : c.frequency;
                c.tail_logprob = -std::log(p) / nh;
                c.tail_logprob_se = c.lower_bound ? kNaN : c.frequency_se / (p * nh);
                c.rate = rate;
                report.tails.push_back(c);
                gaps.push_back(c.lower_bound ? kNaN : std::abs(c.tail_logprob - rate));

                if (ni == 0) {
                    const double expected = reps * std::exp(-nh * rate);
                    if (expected < 10.0)
                        report.warnings.push_back("expected exceedances at n = " + std::to_string(n) +
                                                  ", t = " + fmt(t) + " are about " + fmt(expected) +
                                                  " (< 10); raise replicates");
                }
                if (c.lower_bound)
                    report.warnings.push_back("zero exceedances at x = " + fmt(x) + ", n = " + std::to_string(n) +
                                              ", t = " + fmt(t) + "; tail_logprob is a lower bound");
            }
            std::size_t pairs = 0, decreasing = 0;
            for (std::size_t i = 1; i < gaps.size(); ++i) {
                if (std::isnan(gaps[i]) || std::isnan(gaps[i - 1])) continue;
                ++pairs;
                decreasing += gaps[i] < gaps[i - 1] ? 1 : 0;
            }
            const double share = pairs ? static_cast<double>(decreasing) / static_cast<double>(pairs) : kNaN;
            report.checks.push_back(
                {"tail_gap_decreasing", x, plan.n_list.back(), share, kNaN, 1.0, 0.0, pairs > 0 && decreasing == pairs});
        }
    }
}

void summarise_mdp(ExperimentReport& report, const ExperimentPlan& plan, const ReplicateTable& table) {
    const auto& sched = plan.schedule;
    for (std::size_t xi = 0; xi < plan.x_points.size(); ++xi) {
        const double x = plan.x_points[xi];
        const Truth truth = plan.model.truth(x, plan.kernel);
        const MdpRate rate = make_mdp_rate(EstimatorKind::Averaged, sched.a, sched.q, truth.f, truth.var, plan.kernel);
        for (std::size_t ni = 0; ni < plan.n_list.size(); ++ni) {
            const std::uint64_t n = plan.n_list[ni];
            const double nh = static_cast<double>(n) * sched.bandwidth().value(n);
            const double v_n = std::pow(static_cast<double>(n), plan.v_exponent);
            auto z = column(table, xi, ni, &EstimatePoint::averaged);
            for (auto& v : z) v = v_n * (v - truth.r);
            const Summary s = summarise_sample(z);

            MdpCell c{};
            c.x = x;
            c.n = n;
            c.v_n = v_n;
            c.mean = s.mean;
            c.variance = s.variance;
            c.variance_se = s.variance_se;
            c.skewness = s.skewness;
            c.excess_kurtosis = s.excess_kurtosis;
            // J(t) = t^2 / (2 Var(Z) n h_n / v_n^2); the coefficient is J(1).
            const double scaled = s.variance * nh / (v_n * v_n);
            c.implied_coefficient = scaled > 0.0 ? 1.0 / (2.0 * scaled) : kInf;
            c.implied_coefficient_se =
                scaled > 0.0 ? c.implied_coefficient * s.variance_se / s.variance : kNaN;
            c.target_coefficient = rate(1.0);
            report.mdp.push_back(c);
        }
        const MdpCell& last = report.mdp.back();
        if (std::isfinite(last.target_coefficient)) {
            report.checks.push_back(make_check("implied_coefficient", x, last.n, last.implied_coefficient,
                                               last.implied_coefficient_se, last.target_coefficient, 0.15));
        } else {
            report.checks.push_back({"implied_coefficient", x, last.n, last.implied_coefficient, kNaN, kInf, 0.0,
                                     std::isinf(last.implied_coefficient)});
        }
    }
}

}  // namespace

ExperimentReport summarise(ExperimentKind kind, const ExperimentPlan& plan, const ReplicateTable& table) {
    ExperimentReport report{};
    report.kind = kind;
    report.warnings = plan.validate(kind);
    if (table.replicates() != plan.replicates || table.x_count() != plan.x_points.size() ||
        table.n_count() != plan.n_list.size())
        throw ValidationError("replicate table does not match the plan");
    switch (kind) {
        case ExperimentKind::Bias: summarise_bias(report, plan, table); break;
        case ExperimentKind::Variance: summarise_variance(report, plan, table); break;
        case ExperimentKind::Tail: summarise_tail(report, plan, table); break;
        case ExperimentKind::Mdp: summarise_mdp(report, plan, table); break;
    }
    return report;
}

ExperimentReport run_experiment(ExperimentKind kind, const ExperimentPlan& plan) {
    plan.validate(kind);
    if (kind == ExperimentKind::Tail) {
        // Fail on the rate function before spending time on replicates.
        PsiContext(plan.schedule.a, plan.schedule.q, plan.x_points.front(), plan.model, plan.kernel,
                   plan.quadrature);
    }
    return summarise(kind, plan, simulate_replicates(plan));
}

ExperimentReport run_bias_experiment(const ExperimentPlan& plan) { return run_experiment(ExperimentKind::Bias, plan); }
ExperimentReport run_variance_experiment(const ExperimentPlan& plan) {
    return run_experiment(ExperimentKind::Variance, plan);
}
ExperimentReport run_tail_experiment(const ExperimentPlan& plan) { return run_experiment(ExperimentKind::Tail, plan); }
ExperimentReport run_mdp_experiment(const ExperimentPlan& plan) { return run_experiment(ExperimentKind::Mdp, plan); }

bool ExperimentReport::all_pass() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.pass; });
}

Table ExperimentReport::table() const {
    Table t;
    auto num = [](double v) { return Cell{v}; };
    auto count = [](std::uint64_t v) { return Cell{static_cast<std::int64_t>(v)}; };
    switch (kind) {
        case ExperimentKind::Bias:
            t.columns = {"x",         "n",          "h",           "true_r",           "mean_error",
                         "mean_error_se", "bias_ratio", "bias_ratio_se", "oracle_bias_ratio"};
            for (const auto& c : cells)
                t.rows.push_back({num(c.x), count(c.n), num(c.bandwidth), num(c.true_r), num(c.mean_error),
                                  num(c.mean_error_se), num(c.bias_ratio), num(c.bias_ratio_se),
                                  num(c.oracle_bias_ratio)});
            break;
        case ExperimentKind::Variance:
            t.columns = {"x",
                         "n",
                         "h",
                         "variance_scaled",
                         "variance_scaled_se",
                         "oracle_variance",
                         "var_averaged",
                         "var_semi_recursive",
                         "var_nadaraya_watson",
                         "semi_over_averaged_lo",
                         "nw_over_semi_lo"};
            for (const auto& c : cells)
                t.rows.push_back({num(c.x), count(c.n), num(c.bandwidth), num(c.variance_scaled),
                                  num(c.variance_scaled_se), num(c.oracle_variance), num(c.var_averaged),
                                  num(c.var_semi_recursive), num(c.var_nadaraya_watson),
                                  num(c.semi_over_averaged_lo), num(c.nw_over_semi_lo)});
            break;
        case ExperimentKind::Tail:
            t.columns = {"x",            "n",               "threshold",   "exceedances", "frequency", "frequency_se",
                         "tail_logprob", "tail_logprob_se", "lower_bound", "rate_I",      "gap"};
            for (const auto& c : tails)
                t.rows.push_back({num(c.x), count(c.n), num(c.threshold), count(c.exceedances), num(c.frequency),
                                  num(c.frequency_se), num(c.tail_logprob), num(c.tail_logprob_se),
                                  Cell{std::int64_t{c.lower_bound ? 1 : 0}}, num(c.rate),
                                  num(c.tail_logprob - c.rate)});
            break;
        case ExperimentKind::Mdp:
            t.columns = {"x",        "n",           "v_n",
                         "mean",     "variance",    "variance_se",
                         "skewness", "excess_kurtosis", "implied_coefficient",
                         "implied_coefficient_se", "target_coefficient"};
            for (const auto& c : mdp)
                t.rows.push_back({num(c.x), count(c.n), num(c.v_n), num(c.mean), num(c.variance),
                                  num(c.variance_se), num(c.skewness), num(c.excess_kurtosis),
                                  num(c.implied_coefficient), num(c.implied_coefficient_se),
                                  num(c.target_coefficient)});
            break;
    }
    return t;
}

nlohmann::json summary_json(const ExperimentReport& report, const Meta& meta) {
    auto number = [](double v) -> nlohmann::json {
        if (!std::isfinite(v)) return format_number(v);
        return std::stod(format_number(v));
    };
    nlohmann::json meta_obj = nlohmann::json::object();
    for (const auto& [k, v] : meta) meta_obj[k] = v;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"x", number(c.x)},
                          {"n", c.n},
                          {"estimate", number(c.estimate)},
                          {"standard_error", number(c.standard_error)},
                          {"target", number(c.target)},
                          {"tolerance", number(c.tolerance)},
                          {"pass", c.pass}});
    }
    return {{"meta", std::move(meta_obj)},
            {"experiment", std::string(to_string(report.kind))},
            {"checks", std::move(checks)},
            {"all_pass", report.all_pass()},
            {"warnings", report.warnings}};
}

}  // namespace avgsa

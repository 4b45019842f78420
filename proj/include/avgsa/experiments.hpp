#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avgsa/estimators.hpp"
#include "avgsa/kernels.hpp"
#include "avgsa/models.hpp"
#include "avgsa/quadrature.hpp"
#include "avgsa/report.hpp"
#include "avgsa/schedules.hpp"

namespace avgsa {

enum class ExperimentKind { Bias, Variance, Tail, Mdp };

/// "bias" | "variance" | "tail" | "mdp"; throws ParseError otherwise.
ExperimentKind experiment_kind_from_name(std::string_view name);
std::string_view to_string(ExperimentKind kind) noexcept;

struct ExperimentPlan {
    Model model = Model::uniform_quadratic_gauss();
    ScheduleConfig schedule;
    Kernel kernel{KernelKind::Epanechnikov};
    std::vector<double> x_points{0.5};
    std::vector<std::uint64_t> n_list{1000, 10000, 100000};
    std::size_t replicates = 2000;
    std::uint64_t master_seed = 0;
    /// v_n = n^v_exponent for the moderate-deviation scaling.
    double v_exponent = 0.2;
    /// t >= 0 counts {rbar - r >= t}; t < 0 counts {rbar - r <= t}.
    std::vector<double> tail_thresholds;
    /// Count {|rbar - r| >= |t|} instead.
    bool two_sided = false;
    double r0 = 0.0;
    unsigned threads = 1;
    QuadratureSpec quadrature;

    /// Throws ValidationError; returns planner warnings.
    std::vector<std::string> validate(ExperimentKind kind) const;
};

/// v_exponent must lie in (0, (1-a)/2) and below 2a so that v_n -> inf,
/// v_n^2 / (n h_n) -> 0 and v_n h_n^2 -> 0.
bool moderate_scaling_admissible(double v_exponent, double a) noexcept;

/// (1-q)/(1-q-2a): limit of E[rbar_n - r] / (h_n^2 m2).
double bias_constant(double a, double q) noexcept;

/// The four estimators at one (x, n) of one replicate.
struct EstimatePoint {
    double averaged;
    double revesz;
    double semi_recursive;
    double nadaraya_watson;
};

/// Estimates of every replicate at every (x, n) checkpoint.
class ReplicateTable {
public:
    ReplicateTable(std::size_t replicates, std::size_t x_count, std::size_t n_count);

    std::size_t replicates() const noexcept { return replicates_; }
    std::size_t x_count() const noexcept { return x_count_; }
    std::size_t n_count() const noexcept { return n_count_; }

    EstimatePoint& at(std::size_t rep, std::size_t xi, std::size_t ni);
    const EstimatePoint& at(std::size_t rep, std::size_t xi, std::size_t ni) const;
    std::span<EstimatePoint> replicate(std::size_t rep);

private:
    std::size_t replicates_, x_count_, n_count_;
    std::vector<EstimatePoint> data_;
};

/// Streams one replicate to max(n_list), recording every estimator at each checkpoint.
/// The stream is make_stream(master_seed, index); the result depends on nothing else.
void run_replicate(const ExperimentPlan& plan, std::size_t index, std::span<EstimatePoint> out);

/// All replicates, spread over plan.threads workers. Bit-identical for any thread count.
ReplicateTable simulate_replicates(const ExperimentPlan& plan);

struct CellStats {
    double x;
    std::uint64_t n;
    double bandwidth;
    double true_r;
    double mean_error;
    double mean_error_se;
    double bias_ratio;  // mean_error / h_n^2
    double bias_ratio_se;
    double oracle_bias_ratio;
    double variance_scaled;  // n h_n sample variance of rbar_n
    double variance_scaled_se;
    double oracle_variance;
    double var_averaged;
    double var_semi_recursive;
    double var_nadaraya_watson;
    /// 2.5% bootstrap quantiles of var(semi)/var(avg) and var(nw)/var(semi).
    double semi_over_averaged_lo;
    double nw_over_semi_lo;
};

struct TailCell {
    double x;
    std::uint64_t n;
    double threshold;
    std::uint64_t exceedances;
    double frequency;
    double frequency_se;
    /// -(n h_n)^-1 log(frequency); with zero exceedances the 1/replicates bound.
    double tail_logprob;
    double tail_logprob_se;
    bool lower_bound;
    double rate;  // I(threshold) from the rate-function module
};

struct MdpCell {
    double x;
    std::uint64_t n;
    double v_n;
    double mean;
    double variance;
    double variance_se;
    double skewness;
    double excess_kurtosis;
    /// 1 / (2 n h_n Var(rbar_n)): the quadratic coefficient implied by the spread.
    double implied_coefficient;
    double implied_coefficient_se;
    /// J_avg(1) = factor * base / 2.
    double target_coefficient;
};

struct OracleCheck {
    std::string name;
    double x;
    std::uint64_t n;
    double estimate;
    double standard_error;
    double target;
    double tolerance;  // relative; absolute 3 standard errors when target == 0
    bool pass;
};

struct ExperimentReport {
    ExperimentKind kind;
    std::vector<CellStats> cells;
    std::vector<TailCell> tails;
    std::vector<MdpCell> mdp;
    std::vector<OracleCheck> checks;
    std::vector<std::string> warnings;

    /// CSV-ready table; column set depends on kind.
    Table table() const;
    bool all_pass() const noexcept;
};

ExperimentReport run_bias_experiment(const ExperimentPlan& plan);
ExperimentReport run_variance_experiment(const ExperimentPlan& plan);
ExperimentReport run_tail_experiment(const ExperimentPlan& plan);
ExperimentReport run_mdp_experiment(const ExperimentPlan& plan);
ExperimentReport run_experiment(ExperimentKind kind, const ExperimentPlan& plan);

/// Builds the report of `kind` from precomputed replicates (plan must match).
ExperimentReport summarise(ExperimentKind kind, const ExperimentPlan& plan, const ReplicateTable& table);

/// JSON summary: meta, oracle checks with pass flags, warnings.
nlohmann::json summary_json(const ExperimentReport& report, const Meta& meta);

}  // namespace avgsa

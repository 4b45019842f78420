#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avgsa/experiments.hpp"
#include "avgsa/quadrature.hpp"
#include "avgsa/report.hpp"
#include "avgsa/schedules.hpp"

namespace avgsa {

enum class Command { Validate, Estimate, Ratefn, Mdp, Simulate };

/// "lo:hi:steps": steps + 1 equally spaced points from lo to hi.
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t steps = 1;

    /// Throws ParseError on malformed text, ValidationError unless lo < hi and steps >= 1.
    static GridSpec parse(std::string_view text);
    std::vector<double> points() const;
};

/// Everything a CLI run needs. Built from an INI-style document whose keys
/// may sit at the top level or in their own section:
///
///   [schedule]   alpha a q c c_prime gamma0
///   [model]      model sigma y_const kernel r0
///   [quadrature] quad_abs_tol quad_rel_tol quad_max_subdivisions
///   [experiment] x_points n_list replicates seed v_exponent tail_thresholds two_sided threads
///
/// Lists are comma separated. Booleans are true/false.
struct RunConfig {
    Command command = Command::Validate;
    ScheduleConfig schedule;
    std::string model = "uniform_quadratic_gauss";
    double sigma = 0.5;
    double y_const = 3.0;
    std::string kernel = "epanechnikov";
    double r0 = 0.0;
    QuadratureSpec quadrature;

    std::vector<double> x_points{0.5};
    std::vector<std::uint64_t> n_list{1000, 10000, 100000};
    std::size_t replicates = 2000;
    std::optional<std::uint64_t> seed;
    double v_exponent = 0.2;
    std::vector<double> tail_thresholds;
    bool two_sided = false;
    unsigned threads = 1;

    /// Names resolve, schedule constraints hold, quadrature tolerances are
    /// positive. Throws ParseError / ValidationError.
    void validate() const;
    /// Requires a seed; throws ValidationError otherwise.
    ExperimentPlan plan() const;
    /// Ordered key/value echo with round-trip precision.
    Meta echo() const;
};

/// Parses and validates. ParseError messages carry the line and key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
/// Sectioned document that parse_config reads back to an equal RunConfig.
std::string to_ini(const RunConfig& config);

bool operator==(const RunConfig& lhs, const RunConfig& rhs);

}  // namespace avgsa

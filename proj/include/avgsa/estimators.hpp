#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "avgsa/kernels.hpp"
#include "avgsa/models.hpp"
#include "avgsa/schedules.hpp"

namespace avgsa {

/// Streaming state of the recursive kernel regression estimators on a fixed grid.
///
/// Each observation costs O(grid). Per grid point x the state holds
///   - the Revesz/Robbins-Monro iterate r_n(x),
///   - its weighted average rbar_n(x) = sum q_k r_k(x) / sum q_k,
///   - the semi-recursive numerator/denominator sum Y_i K_i / h_i, sum K_i / h_i.
/// No history is retained.
class EstimatorState {
public:
    /// Validates the schedule; throws ValidationError.
    EstimatorState(std::vector<double> grid, ScheduleConfig schedule, Kernel kernel, double r0 = 0.0);

    /// One Robbins-Monro step at every grid point:
    ///   r_n = r_{n-1} + gamma_n h_n^-1 K((x - X)/h_n) (Y - r_{n-1}).
    /// The gain may exceed 1 for small n; it is not clamped.
    void update(Observation obs);

    std::uint64_t count() const noexcept { return n_; }
    std::span<const double> grid() const noexcept { return grid_; }
    const ScheduleConfig& schedule() const noexcept { return schedule_; }
    Kernel kernel() const noexcept { return kernel_; }
    double r0() const noexcept { return r0_; }
    /// sum_{k<=n} q_k
    double weight_sum() const noexcept { return qsum_; }
    /// h_n at the current count (h_1 before any update).
    double current_bandwidth() const;

    double revesz(std::size_t i) const { return r_.at(i); }
    std::span<const double> revesz_values() const noexcept { return r_; }
    /// Throws ValidationError before the first observation.
    double averaged(std::size_t i) const;
    /// 0 while no observation has put weight on grid point i.
    double semi_recursive(std::size_t i) const;

private:
    std::vector<double> grid_;
    ScheduleConfig schedule_;
    Kernel kernel_;
    double r0_;
    std::uint64_t n_ = 0;
    double qsum_ = 0.0;
    std::vector<double> r_;
    std::vector<double> avg_;
    std::vector<double> sr_num_;
    std::vector<double> sr_den_;
};

/// Functional form of EstimatorState::update.
inline EstimatorState revesz_update(EstimatorState state, Observation obs) {
    state.update(obs);
    return state;
}

inline double averaged_value(const EstimatorState& state, std::size_t i) { return state.averaged(i); }
inline double semi_recursive_value(const EstimatorState& state, std::size_t i) {
    return state.semi_recursive(i);
}

/// sum Y_i K((x - X_i)/h) / sum K((x - X_i)/h), or 0 when the denominator is 0.
double nadaraya_watson(std::span<const Observation> data, double h, double x, Kernel kernel);

}  // namespace avgsa

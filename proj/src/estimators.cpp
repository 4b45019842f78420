#include "avgsa/estimators.hpp"

#include <cmath>

#include "avgsa/error.hpp"

namespace avgsa {

EstimatorState::EstimatorState(std::vector<double> grid, ScheduleConfig schedule, Kernel kernel, double r0)
    : grid_(std::move(grid)),
      schedule_(schedule),
      kernel_(kernel),
      r0_(r0),
      r_(grid_.size(), r0),
      avg_(grid_.size(), 0.0),
      sr_num_(grid_.size(), 0.0),
      sr_den_(grid_.size(), 0.0) {
    schedule_.validate();
}

double EstimatorState::current_bandwidth() const {
    return schedule_.bandwidth().value(n_ == 0 ? 1 : n_);
}

void EstimatorState::update(Observation obs) {
    ++n_;
    const double gamma = schedule_.stepsize().value(n_);
    const double h = schedule_.bandwidth().value(n_);
    const double q = schedule_.weight().value(n_);
    const double inv_h = 1.0 / h;
    const double reach = kernel_.support_radius() * h;

    qsum_ += q;
    const double share = q / qsum_;
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        const double d = grid_[i] - obs.x;
        if (std::abs(d) <= reach) {
            const double k = kernel_(d * inv_h);
            if (k != 0.0) {
                // Written as an increment so that Y == r_{n-1} leaves r bit-identical.
                r_[i] += gamma * inv_h * k * (obs.y - r_[i]);
                sr_num_[i] += obs.y * k * inv_h;
                sr_den_[i] += k * inv_h;
            }
        }
        avg_[i] += share * (r_[i] - avg_[i]);
    }
}

double EstimatorState::averaged(std::size_t i) const {
    if (n_ == 0) throw ValidationError("averaged estimator is undefined before the first observation");
    return avg_.at(i);
}

double EstimatorState::semi_recursive(std::size_t i) const {
    if (n_ == 0) throw ValidationError("semi-recursive estimator is undefined before the first observation");
    const double den = sr_den_.at(i);
    return den == 0.0 ? 0.0 : sr_num_[i] / den;
}

double nadaraya_watson(std::span<const Observation> data, double h, double x, Kernel kernel) {
    if (data.empty()) throw ValidationError("Nadaraya-Watson needs at least one observation");
    if (!(h > 0.0)) throw ValidationError("Nadaraya-Watson bandwidth must be positive");
    const double inv_h = 1.0 / h;
    const double reach = kernel.support_radius() * h;
    double num = 0.0;
    double den = 0.0;
    for (const auto& obs : data) {
        const double d = x - obs.x;
        if (std::abs(d) > reach) continue;
        const double k = kernel(d * inv_h);
        num += obs.y * k;
        den += k;
    }
    return den == 0.0 ? 0.0 : num / den;
}

}  // namespace avgsa

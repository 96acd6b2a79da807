// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace fdrelay {

/// Water-filling solution over parallel scalar channels:
/// powers[i] = max(water_level - 1/gain[i], 0), sum(powers) = budget.
struct PowerAllocation {
    std::vector<double> powers;
    double water_level = 0.0;
    double budget = 0.0;

    double total() const;
    /// Number of streams with positive power.
    int active_streams() const;
};

inline constexpr double kWaterfillTol = 1e-12;

/// Maximizes sum log2(1 + gains[i] * p[i]) subject to sum p <= budget, p >= 0.
///
/// The water level is bracketed in [min 1/g, max 1/g + budget] over the
/// positive gains and bisected until the budget residual is below
/// tol * budget; the active set found this way then fixes the water level in
/// closed form, so equal gains always receive equal power.
/// Zero gains get zero power.
///
/// Throws InvalidInput on a negative or non-finite gain, or budget <= 0, and
/// NoFeasibleStreams when no gain is positive.
PowerAllocation waterfill(std::span<const double> gains, double budget, double tol = kWaterfillTol);

/// sum log2(1 + gains[i] * powers[i]) in bits per channel use.
double waterfill_rate(std::span<const double> gains, const PowerAllocation& allocation);
double waterfill_rate(std::span<const double> gains, std::span<const double> powers);

} // namespace fdrelay

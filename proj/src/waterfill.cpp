// SPDX-License-Identifier: Apache-2.0

#include "fdrelay/waterfill.hpp"

#include "fdrelay/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fdrelay {

double PowerAllocation::total() const {
    double s = 0.0;
    for (double p : powers) s += p;
    return s;
}

int PowerAllocation::active_streams() const {
    return static_cast<int>(std::count_if(powers.begin(), powers.end(), [](double p) { return p > 0.0; }));
}

namespace {

double poured(std::span<const double> inv_gains, double level) {
    double s = 0.0;
    for (double ig : inv_gains)
        if (level > ig) s += level - ig;
    return s;
}

} // namespace

PowerAllocation waterfill(std::span<const double> gains, double budget, double tol) {
    if (!(budget > 0.0) || !std::isfinite(budget)) throw InvalidInput("waterfill: budget must be finite and > 0");
    if (!(tol > 0.0)) throw InvalidInput("waterfill: tol must be > 0");

    std::vector<double> inv(gains.size(), std::numeric_limits<double>::infinity());
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        const double g = gains[i];
        if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidInput("waterfill: gains must be finite and >= 0");
        if (g > 0.0) {
            inv[i] = 1.0 / g;
            lo = std::min(lo, inv[i]);
            hi = std::max(hi, inv[i]);
        }
    }
    if (!std::isfinite(lo)) throw NoFeasibleStreams("waterfill: no positive gain");
    hi += budget;

    // poured(level) is continuous and non-decreasing, poured(lo) = 0 < budget <= poured(hi)
    double level = hi;
    for (int it = 0; it < 200; ++it) {
        level = 0.5 * (lo + hi);
        const double residual = poured(inv, level) - budget;
        if (std::abs(residual) <= tol * budget) break;
        if (residual > 0.0)
            hi = level;
        else
            lo = level;
        if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) break;
    }

    // Closed form on the identified active set. Streams sitting exactly at the
    // water level carry zero power either way.
    double inv_sum = 0.0;
    int active = 0;
    for (double ig : inv) {
        if (ig < level) {
            inv_sum += ig;
            ++active;
        }
    }
    const double exact = (budget + inv_sum) / active;
    bool consistent = true;
    for (double ig : inv) {
        if ((ig < level) != (ig < exact)) {
            consistent = false;
            break;
        }
    }
    if (consistent) level = exact;

    PowerAllocation out;
    out.water_level = level;
    out.budget = budget;
    out.powers.resize(gains.size());
    for (std::size_t i = 0; i < inv.size(); ++i) out.powers[i] = inv[i] < level ? level - inv[i] : 0.0;
    return out;
}

double waterfill_rate(std::span<const double> gains, std::span<const double> powers) {
    if (gains.size() != powers.size()) throw InvalidInput("waterfill_rate: length mismatch");
    double r = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) r += std::log2(1.0 + gains[i] * powers[i]);
    return r;
}

double waterfill_rate(std::span<const double> gains, const PowerAllocation& allocation) {
    return waterfill_rate(gains, std::span<const double>(allocation.powers));
}

} // namespace fdrelay

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fdrelay/channel.hpp"
#include "fdrelay/robust.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace fdrelay {

/// Rates of one channel realization (bits per channel use).
struct TrialRecord {
    int trial_index = 0;
    std::uint64_t seed = 0;
    double r_hd = 0.0;
    double r_fd_worst = 0.0;
};

/// Squared singular values of one (H1, H2) draw.
struct TrialChannels {
    std::uint64_t seed = 0;
    std::vector<double> sig1_sq;
    std::vector<double> sig2_sq;
};

struct RunOptions {
    int workers = 1;
    RobustOptions robust;
};

/// Averages over L trials for each point of a T/P sweep.
struct SweepReport {
    SystemConfig config;
    std::vector<double> t_over_p;
    int l_trials = 0;
    std::uint64_t master_seed = 0;
    std::vector<double> mean_rates_hd;
    std::vector<double> mean_rates_fd;
    std::vector<double> se_hd;
    std::vector<double> se_fd;
    /// Known-RSI comparison curve, only filled when requested.
    std::vector<double> mean_rates_ub;
    std::vector<double> se_ub;
    RobustOptions robust;
    const char* seed_scheme = kSeedScheme;

    bool has_upper_bound() const { return !mean_rates_ub.empty(); }
};

/// Runs fn(i) for i in [0, n) on `workers` threads. Each index is visited once;
/// results must be written to per-index storage.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

/// H1 (k_rx x m_src) then H2 (n_dst x k_tx) drawn from the child stream
/// child_seed(master_seed, index).
std::pair<ComplexMatrix, ComplexMatrix> draw_channels(const SystemConfig& cfg, std::uint64_t master_seed, int index);

/// Channel draw of trial `index`: H1 (k_rx x m_src) then H2 (n_dst x k_tx)
/// from the child stream child_seed(master_seed, index).
TrialChannels draw_trial(const SystemConfig& cfg, std::uint64_t master_seed, int index);

/// Mean and standard error (sample std / sqrt(n)) of `values`.
std::pair<double, double> mean_and_se(const std::vector<double>& values);

/// HD-optimal and robust FD rates per trial at cfg.t_bound, same channels for both.
std::vector<TrialRecord> run_trials(const SystemConfig& cfg, int l_trials, std::uint64_t master_seed,
                                    const RunOptions& opts = {});

/// T/P sweep with T = t_over_p * p_src, reusing the same L channel draws at
/// every T value. `with_upper_bound` adds the known-RSI curve.
SweepReport sweep_t(const SystemConfig& cfg, const std::vector<double>& t_over_p, int l_trials,
                    std::uint64_t master_seed, const RunOptions& opts = {}, bool with_upper_bound = false);

/// Bisection on T/P for the point where the mean FD rate meets the mean HD
/// rate, over fixed channel draws. Throws NoCrossing unless FD beats HD at
/// t_lo and loses at t_hi.
double find_threshold(const SystemConfig& cfg, double t_lo, double t_hi, int l_trials, std::uint64_t master_seed,
                      double tol, const RunOptions& opts = {});

/// One relay transmit/receive antenna split (K_t, K_r).
struct AntennaSplit {
    int k_tx = 0;
    int k_rx = 0;
};

/// One T/P sweep per split with a shared master seed. `base` supplies the
/// power budgets, channel variance and mode; antenna counts come from m, n
/// and the split. Throws InvalidInput if a split does not sum to
/// total_relay_antennas.
std::vector<SweepReport> antenna_split_study(const SystemConfig& base, int m, int n, int total_relay_antennas,
                                             const std::vector<AntennaSplit>& splits,
                                             const std::vector<double>& t_over_p, int l_trials,
                                             std::uint64_t master_seed, const RunOptions& opts = {});

/// Random instance of the inner source-vs-RSI game, used to compare the
/// iterative solver with the exhaustive oracle.
struct OracleInstance {
    std::uint64_t seed = 0;
    std::vector<double> sig1_sq;     ///< squared singular values of a streams x streams CN(0,2) channel
    std::vector<double> gamma_r_bar; ///< relay water-filling over an independent channel, budget in [1, 5]
    double p_src = 5.0;
    double t_bound = 0.0;            ///< uniform in [0.2, 15]
};

OracleInstance oracle_instance(int streams, std::uint64_t master_seed, int index);

} // namespace fdrelay

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fdrelay/channel.hpp"
#include "fdrelay/rates.hpp"

#include <span>
#include <vector>

namespace fdrelay {

/// Iteration controls of the nested robust design loop.
struct RobustOptions {
    double shrink_c = 0.95;    ///< relay budget back-off factor, in [0.9, 1)
    double outer_tol = 1e-4;   ///< stop when |R(l) - R(l-1)| <= outer_tol (bits)
    double inner_tol = 1e-6;   ///< stop when ||sigma_r(q) - sigma_r(q-1)||_2 <= inner_tol
    int max_outer = 200;
    int max_inner = 500;

    void validate() const;
};

/// Outcome of the source-vs-RSI game for a fixed relay power vector.
struct WorstCaseSolution {
    std::vector<double> sigr_sq;        ///< squared RSI singular values, sum = T
    double water_level_si = 0.0;        ///< water level of the RSI allocation
    std::vector<double> gamma_s;        ///< source powers (best response to sigr_sq)
    std::vector<double> effective_gains;///< sig1_sq / (1 + gamma_r * sigr_sq)
    double rate_sr = 0.0;               ///< bits per channel use
    bool converged = true;
    int iterations = 0;
    /// Upper bound on how far a grid search can sit above the continuous
    /// minimum (zero for the iterative solver).
    double grid_bound = 0.0;
};

/// Inner game between the source power allocation and the worst-case RSI
/// singular values, for a fixed (truncated) relay power vector gamma_r_bar.
///
/// Starting from the RSI-free water-filling, each round
///   u      = sig1_sq .* gamma_s ./ gamma_r_bar            (0 where gamma_r_bar is 0)
///   sigr_sq = [tau_SI - 1/u]^+ with sum sigr_sq = t_bound
///   v      = sig1_sq ./ (1 + gamma_r_bar .* sigr_sq)
///   gamma_s = [tau_s - 1/v]^+  with sum gamma_s = p_src
/// until the RSI singular values move by at most `tol` in 2-norm.
/// Only the first `coupled_count` streams can carry RSI.
///
/// t_bound == 0 returns plain source water-filling. When max_iter is reached
/// the most damaging iterate seen is returned with converged == false.
WorstCaseSolution worst_case_inner(std::span<const double> sig1_sq, int coupled_count,
                                   std::span<const double> gamma_r_bar, double p_src, double t_bound,
                                   double tol = 1e-6, int max_iter = 500);

/// Exhaustive oracle for the same game: enumerates sigr_sq on the full-budget
/// simplex (at least `grid_points` points), lets the source water-fill against
/// each candidate and keeps the smallest rate. Supports at most 3 streams.
WorstCaseSolution brute_force_worst_case(std::span<const double> sig1_sq, std::span<const double> gamma_r_bar,
                                         double p_src, double t_bound, int grid_points);

/// One outer iteration of the robust design.
struct OuterIterate {
    int l = 0;
    double relay_budget = 0.0;
    double r_sr = 0.0;
    double r_rd = 0.0;
    double r = 0.0;
    bool inner_converged = true;
};

struct RobustDesignResult {
    std::vector<double> gamma_s;
    std::vector<double> gamma_r;
    std::vector<double> sigr_sq;
    double relay_budget_used = 0.0;
    RatePair rates;
    std::vector<OuterIterate> trace;
    int best_index = 0;
    bool converged = true;
    /// Set when DoF_rd < DoF_sr: the aligned RSI is then not provably the worst
    /// case, so the reported rate only upper-bounds the true worst-case rate.
    bool alignment_not_worst_case = false;
};

/// Robust FD transceiver design from channel matrices (requires cfg.mode == full_duplex).
RobustDesignResult robust_design(const ComplexMatrix& h1, const ComplexMatrix& h2, const SystemConfig& cfg,
                                 const RobustOptions& opts = {});

/// Same design from the descending squared singular values of both hops.
///
/// Outer loop over the relay budget P_r(l) = c^(l-1) P_r:
/// water-fill the relay over sig2_sq, keep its first min(M, K_t) powers as the
/// coupling vector, play the inner game, and record R_sr, R_rd and their min.
/// Returns the iterate with the largest min(R_sr, R_rd).
RobustDesignResult robust_design_from_gains(std::span<const double> sig1_sq, std::span<const double> sig2_sq,
                                            const SystemConfig& cfg, const RobustOptions& opts = {});

/// Design against a known RSI spectrum `sigr_sq` (aligned with the useful
/// streams): the source water-fills against the given interference and the
/// relay budget runs through the whole back-off schedule (all max_outer
/// values, no early stop). Upper-bounds the worst-case design that produced
/// `sigr_sq`, since that design's best budget is on the same schedule.
RobustDesignResult known_rsi_design(std::span<const double> sig1_sq, std::span<const double> sig2_sq,
                                    std::span<const double> sigr_sq, const SystemConfig& cfg,
                                    const RobustOptions& opts = {});

/// Number of streams on which the aligned RSI can land: min(M, K_r, K_t, N).
int coupled_stream_count(const SystemConfig& cfg);

} // namespace fdrelay

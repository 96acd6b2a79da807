// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace fdrelay {

/// Dense complex matrix. Carries every channel (source-relay, relay-destination,
/// residual self-interference) and every transmit covariance.
using ComplexMatrix = Eigen::MatrixXcd;

/// Thin SVD of a channel, h = left * diag(singular_values) * right^H.
/// Singular values are sorted in descending order; stream i of one link is
/// paired with stream i of the other by this ordering.
struct SvdTriple {
    ComplexMatrix left;
    std::vector<double> singular_values;
    ComplexMatrix right;

    /// Squared singular values, i.e. the per-stream channel power gains.
    std::vector<double> gains() const;
};

enum class DuplexMode { half_duplex, full_duplex };

std::string to_string(DuplexMode mode);
DuplexMode duplex_mode_from_string(const std::string& text);

/// Antenna counts, power budgets and RSI uncertainty bound of one relay link.
///
/// The source-relay channel is k_rx x m_src and the relay-destination channel
/// is n_dst x k_tx. The residual self-interference channel is k_rx x k_tx and
/// is only constrained through trace(H H^H) <= t_bound.
///
/// Noise at both receivers is unit variance, so powers are SNRs.
/// `entry_variance` is the variance of each channel coefficient used by the
/// Monte-Carlo runner (1 for CN(0,1); 2 when real and imaginary parts are
/// each unit variance).
struct SystemConfig {
    int m_src = 2;
    int k_tx = 2;
    int k_rx = 3;
    int n_dst = 3;
    double p_src = 5.0;
    double p_relay = 5.0;
    double t_bound = 0.0;
    DuplexMode mode = DuplexMode::full_duplex;
    double entry_variance = 1.0;

    int dof_sr() const { return std::min(m_src, k_rx); }
    int dof_rd() const { return std::min(k_tx, n_dst); }

    /// Throws InvalidInput if any field is out of range.
    void validate() const;

    /// Single-line `key=value` rendering used in report headers.
    std::string describe() const;
};

/// Random stream used for channel draws. One stream per trial, never shared.
using RandomStream = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the child stream for trial `index` under `master_seed`:
/// splitmix64(splitmix64(master_seed) + index).
std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t index);

/// Human-readable name of the seed derivation, recorded in every report.
inline constexpr const char* kSeedScheme = "splitmix64(splitmix64(seed)+trial)->mt19937_64";

/// Thin SVD backed by Eigen's Jacobi SVD. Throws InvalidInput on non-finite input.
SvdTriple svd(const ComplexMatrix& h);

/// Descending squared singular values of `h` without the unitary factors.
std::vector<double> channel_gains(const ComplexMatrix& h);

/// rows x cols matrix of i.i.d. circularly-symmetric complex Gaussians with
/// E|h_ij|^2 = variance. Entries are drawn row-major, real part first.
ComplexMatrix sample_channel(int rows, int cols, RandomStream& rng, double variance = 1.0);

/// Q = basis(:, 0:k) * diag(powers) * basis(:, 0:k)^H with k = powers.size().
/// Throws InvalidInput on a negative power or when powers outnumber the columns.
ComplexMatrix covariance_from_modes(const ComplexMatrix& basis, std::span<const double> powers);

bool all_finite(const ComplexMatrix& m);

} // namespace fdrelay

// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fdrelay/channel.hpp"
#include "fdrelay/waterfill.hpp"

#include <span>
#include <vector>

namespace fdrelay {

/// Per-hop and end-to-end rates in bits per channel use.
/// Decode-and-forward: the end-to-end rate is the weaker hop, halved in HD.
struct RatePair {
    double r_sr = 0.0;
    double r_rd = 0.0;
    double r_end2end = 0.0;

    static RatePair half_duplex(double r_sr, double r_rd);
    static RatePair full_duplex(double r_sr, double r_rd);
};

/// Optimal half-duplex transmit covariances: eigenbases are the right singular
/// vectors of each channel, eigenvalues come from water-filling.
struct HdDesign {
    ComplexMatrix q_src;
    ComplexMatrix q_relay;
    PowerAllocation alloc_src;
    PowerAllocation alloc_relay;
    RatePair rate;
};

/// log2 det(I + h q h^H). Throws InvalidCovariance when q is not Hermitian
/// PSD (eigenvalue below -1e-9) and InvalidInput on non-conformable sizes.
double logdet_rate(const ComplexMatrix& h, const ComplexMatrix& q);

/// Full-duplex source-relay rate with the residual self-interference channel
/// treated as noise:
///   log2 det(I + h1 qs h1^H + hr qr hr^H) - log2 det(I + hr qr hr^H).
double fd_sr_rate(const ComplexMatrix& h1, const ComplexMatrix& q_src, const ComplexMatrix& h_rsi,
                  const ComplexMatrix& q_relay);

/// The same rate after the binomial inverse expansion of the interference term:
///   log2 det(I + A - A hr (I + qr hr^H hr)^-1 qr hr^H),  A = h1 qs h1^H.
/// Independent algebraic route to fd_sr_rate.
double fd_sr_rate_binomial(const ComplexMatrix& h1, const ComplexMatrix& q_src, const ComplexMatrix& h_rsi,
                           const ComplexMatrix& q_relay);

/// log2 det(I + h2 qr h2^H).
double fd_rd_rate(const ComplexMatrix& h2, const ComplexMatrix& q_relay);

/// Source-relay rate when the RSI channel is aligned with the useful streams:
///   sum_i log2(1 + sig1_sq[i] gamma_s[i] / (1 + gamma_r[i] sigr_sq[i])).
/// The stream count is sig1_sq.size(); shorter vectors are zero-padded and
/// entries of gamma_r / sigr_sq past it never meet a useful stream.
/// Throws InvalidInput on negative entries or when gamma_s is longer than sig1_sq.
double scalar_fd_sr_rate(std::span<const double> sig1_sq, std::span<const double> gamma_s,
                         std::span<const double> gamma_r, std::span<const double> sigr_sq);

/// Globally optimal HD design: each hop water-filled independently.
/// A zero channel on either hop yields a zero-rate design instead of an error.
HdDesign hd_optimal(const ComplexMatrix& h1, const ComplexMatrix& h2, double p_src, double p_relay);

/// HD end-to-end rate from the channel gains alone (no covariance matrices).
/// Identical arithmetic to hd_optimal, so it is bit-for-bit comparable with
/// the FD designs that start from the same gains.
RatePair hd_rate_from_gains(std::span<const double> sig1_sq, std::span<const double> sig2_sq, double p_src,
                            double p_relay);

/// Water-filled rate over `gains`, or 0 when every gain is zero.
double waterfilled_rate(std::span<const double> gains, double budget);

} // namespace fdrelay

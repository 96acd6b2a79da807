// SPDX-License-Identifier: Apache-2.0

#include "fdrelay/rates.hpp"

#include "fdrelay/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fdrelay {

RatePair RatePair::half_duplex(double r_sr, double r_rd) {
    return {r_sr, r_rd, 0.5 * std::min(r_sr, r_rd)};
}

RatePair RatePair::full_duplex(double r_sr, double r_rd) {
    return {r_sr, r_rd, std::min(r_sr, r_rd)};
}

namespace {

constexpr double kPsdTol = 1e-9;

// Returns q with tiny negative eigenvalues clamped to zero.
ComplexMatrix checked_covariance(const ComplexMatrix& q) {
    if (q.rows() != q.cols()) throw InvalidInput("covariance must be square");
    if (!all_finite(q)) throw InvalidCovariance("covariance has non-finite entries");
    const double scale = std::max(1.0, q.norm());
    if ((q - q.adjoint()).norm() > kPsdTol * scale) throw InvalidCovariance("covariance is not Hermitian");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(q);
    const auto& ev = es.eigenvalues();
    if (ev.size() == 0 || ev.minCoeff() >= 0.0) return q;
    if (ev.minCoeff() < -kPsdTol) throw InvalidCovariance("covariance has a negative eigenvalue");
    const Eigen::VectorXd clamped = ev.cwiseMax(0.0);
    return es.eigenvectors() * clamped.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();
}

// log2 det of a Hermitian positive definite matrix.
double log2det_hpd(const ComplexMatrix& a) {
    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success) throw InvalidCovariance("log-det argument is not positive definite");
    double s = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log2(l(i, i).real());
    return 2.0 * s;
}

ComplexMatrix identity(Eigen::Index n) {
    return ComplexMatrix::Identity(n, n);
}

void require_conformable(const ComplexMatrix& h, const ComplexMatrix& q, const char* what) {
    if (h.cols() != q.rows()) throw InvalidInput(std::string(what) + ": channel/covariance size mismatch");
    if (!all_finite(h)) throw InvalidInput(std::string(what) + ": non-finite channel entry");
}

} // namespace

double logdet_rate(const ComplexMatrix& h, const ComplexMatrix& q) {
    const ComplexMatrix qc = checked_covariance(q);
    require_conformable(h, qc, "logdet_rate");
    ComplexMatrix a = identity(h.rows()) + h * qc * h.adjoint();
    a = (a + a.adjoint()) * 0.5;
    return std::max(0.0, log2det_hpd(a));
}

double fd_rd_rate(const ComplexMatrix& h2, const ComplexMatrix& q_relay) {
    return logdet_rate(h2, q_relay);
}

double fd_sr_rate(const ComplexMatrix& h1, const ComplexMatrix& q_src, const ComplexMatrix& h_rsi,
                  const ComplexMatrix& q_relay) {
    const ComplexMatrix qs = checked_covariance(q_src);
    const ComplexMatrix qr = checked_covariance(q_relay);
    require_conformable(h1, qs, "fd_sr_rate");
    require_conformable(h_rsi, qr, "fd_sr_rate");
    if (h_rsi.rows() != h1.rows()) throw InvalidInput("fd_sr_rate: RSI channel must have k_rx rows");

    ComplexMatrix interference = identity(h1.rows()) + h_rsi * qr * h_rsi.adjoint();
    interference = (interference + interference.adjoint()) * 0.5;
    ComplexMatrix total = interference + h1 * qs * h1.adjoint();
    total = (total + total.adjoint()) * 0.5;
    return std::max(0.0, log2det_hpd(total) - log2det_hpd(interference));
}

double fd_sr_rate_binomial(const ComplexMatrix& h1, const ComplexMatrix& q_src, const ComplexMatrix& h_rsi,
                           const ComplexMatrix& q_relay) {
    const ComplexMatrix qs = checked_covariance(q_src);
    const ComplexMatrix qr = checked_covariance(q_relay);
    require_conformable(h1, qs, "fd_sr_rate_binomial");
    require_conformable(h_rsi, qr, "fd_sr_rate_binomial");
    if (h_rsi.rows() != h1.rows()) throw InvalidInput("fd_sr_rate_binomial: RSI channel must have k_rx rows");

    const ComplexMatrix a = h1 * qs * h1.adjoint();
    const ComplexMatrix inner = identity(h_rsi.cols()) + qr * h_rsi.adjoint() * h_rsi;
    const ComplexMatrix correction = a * h_rsi * inner.partialPivLu().solve(qr * h_rsi.adjoint());
    const ComplexMatrix m = identity(h1.rows()) + a - correction;
    // m = (I + A (I + hr qr hr^H)^-1) is not Hermitian, but its determinant is real and positive.
    const std::complex<double> det = m.partialPivLu().determinant();
    return std::max(0.0, std::log2(std::abs(det)));
}

double scalar_fd_sr_rate(std::span<const double> sig1_sq, std::span<const double> gamma_s,
                         std::span<const double> gamma_r, std::span<const double> sigr_sq) {
    if (gamma_s.size() > sig1_sq.size()) throw InvalidInput("scalar_fd_sr_rate: gamma_s longer than sig1_sq");
    auto at = [](std::span<const double> v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
    auto check = [](std::span<const double> v) {
        for (double x : v)
            if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidInput("scalar_fd_sr_rate: entries must be finite and >= 0");
    };
    check(sig1_sq);
    check(gamma_s);
    check(gamma_r);
    check(sigr_sq);

    double r = 0.0;
    for (std::size_t i = 0; i < sig1_sq.size(); ++i) {
        const double useful = sig1_sq[i] * at(gamma_s, i);
        r += std::log2(1.0 + useful / (1.0 + at(gamma_r, i) * at(sigr_sq, i)));
    }
    return r;
}

double waterfilled_rate(std::span<const double> gains, double budget) {
    if (std::none_of(gains.begin(), gains.end(), [](double g) { return g > 0.0; })) return 0.0;
    return waterfill_rate(gains, waterfill(gains, budget));
}

RatePair hd_rate_from_gains(std::span<const double> sig1_sq, std::span<const double> sig2_sq, double p_src,
                            double p_relay) {
    return RatePair::half_duplex(waterfilled_rate(sig1_sq, p_src), waterfilled_rate(sig2_sq, p_relay));
}

namespace {

PowerAllocation waterfill_or_zero(const std::vector<double>& gains, double budget) {
    if (std::none_of(gains.begin(), gains.end(), [](double g) { return g > 0.0; }))
        return PowerAllocation{std::vector<double>(gains.size(), 0.0), 0.0, budget};
    return waterfill(gains, budget);
}

} // namespace

HdDesign hd_optimal(const ComplexMatrix& h1, const ComplexMatrix& h2, double p_src, double p_relay) {
    if (!(p_src > 0.0) || !(p_relay > 0.0)) throw InvalidInput("hd_optimal: budgets must be > 0");
    const SvdTriple s1 = svd(h1);
    const SvdTriple s2 = svd(h2);
    const std::vector<double> g1 = s1.gains();
    const std::vector<double> g2 = s2.gains();

    HdDesign d;
    d.alloc_src = waterfill_or_zero(g1, p_src);
    d.alloc_relay = waterfill_or_zero(g2, p_relay);
    d.q_src = covariance_from_modes(s1.right, d.alloc_src.powers);
    d.q_relay = covariance_from_modes(s2.right, d.alloc_relay.powers);
    d.rate = RatePair::half_duplex(waterfill_rate(g1, d.alloc_src), waterfill_rate(g2, d.alloc_relay));
    return d;
}

} // namespace fdrelay

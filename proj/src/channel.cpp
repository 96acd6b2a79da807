// SPDX-License-Identifier: Apache-2.0

#include "fdrelay/channel.hpp"

#include "fdrelay/errors.hpp"

#include <cmath>
#include <sstream>

namespace fdrelay {

std::vector<double> SvdTriple::gains() const {
    std::vector<double> out(singular_values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = singular_values[i] * singular_values[i];
    return out;
}

std::string to_string(DuplexMode mode) {
    return mode == DuplexMode::half_duplex ? "half_duplex" : "full_duplex";
}

DuplexMode duplex_mode_from_string(const std::string& text) {
    if (text == "half_duplex" || text == "hd") return DuplexMode::half_duplex;
    if (text == "full_duplex" || text == "fd") return DuplexMode::full_duplex;
    throw InvalidInput("unknown duplex mode '" + text + "'");
}

void SystemConfig::validate() const {
    if (m_src < 1 || k_tx < 1 || k_rx < 1 || n_dst < 1)
        throw InvalidInput("antenna counts must be >= 1");
    if (!(p_src > 0.0) || !(p_relay > 0.0) || !std::isfinite(p_src) || !std::isfinite(p_relay))
        throw InvalidInput("power budgets must be finite and > 0");
    if (!(t_bound >= 0.0) || !std::isfinite(t_bound))
        throw InvalidInput("t_bound must be finite and >= 0");
    if (!(entry_variance > 0.0) || !std::isfinite(entry_variance))
        throw InvalidInput("entry_variance must be finite and > 0");
}

std::string SystemConfig::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "m_src=" << m_src << " k_tx=" << k_tx << " k_rx=" << k_rx << " n_dst=" << n_dst
       << " p_src=" << p_src << " p_relay=" << p_relay << " t_bound=" << t_bound
       << " mode=" << to_string(mode) << " entry_variance=" << entry_variance;
    return os.str();
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(splitmix64(master_seed) + index);
}

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

SvdTriple svd(const ComplexMatrix& h) {
    if (h.rows() < 1 || h.cols() < 1) throw InvalidInput("svd: empty matrix");
    if (!all_finite(h)) throw InvalidInput("svd: non-finite entry");

    Eigen::JacobiSVD<ComplexMatrix> dec(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdTriple out;
    out.left = dec.matrixU();
    out.right = dec.matrixV();
    const auto& s = dec.singularValues();
    out.singular_values.assign(s.data(), s.data() + s.size());
    return out;
}

std::vector<double> channel_gains(const ComplexMatrix& h) {
    if (h.rows() < 1 || h.cols() < 1) throw InvalidInput("channel_gains: empty matrix");
    if (!all_finite(h)) throw InvalidInput("channel_gains: non-finite entry");
    Eigen::JacobiSVD<ComplexMatrix> dec(h);
    const auto& s = dec.singularValues();
    std::vector<double> g(static_cast<std::size_t>(s.size()));
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = s[static_cast<Eigen::Index>(i)] * s[static_cast<Eigen::Index>(i)];
    return g;
}

ComplexMatrix sample_channel(int rows, int cols, RandomStream& rng, double variance) {
    if (rows < 1 || cols < 1) throw InvalidInput("sample_channel: rows and cols must be >= 1");
    if (!(variance > 0.0)) throw InvalidInput("sample_channel: variance must be > 0");
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    ComplexMatrix h(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            h(i, j) = {re, im};
        }
    }
    return h;
}

ComplexMatrix covariance_from_modes(const ComplexMatrix& basis, std::span<const double> powers) {
    if (static_cast<Eigen::Index>(powers.size()) > basis.cols())
        throw InvalidInput("covariance_from_modes: more powers than basis columns");
    for (double p : powers)
        if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInput("covariance_from_modes: negative or non-finite power");

    const auto k = static_cast<Eigen::Index>(powers.size());
    const ComplexMatrix u = basis.leftCols(k);
    Eigen::VectorXd g(k);
    for (Eigen::Index i = 0; i < k; ++i) g[i] = powers[static_cast<std::size_t>(i)];
    ComplexMatrix q = u * g.cast<std::complex<double>>().asDiagonal() * u.adjoint();
    // exact Hermitian symmetry
    return (q + q.adjoint()) * 0.5;
}

} // namespace fdrelay

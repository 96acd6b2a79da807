// SPDX-License-Identifier: Apache-2.0

#include "fdrelay/errors.hpp"
#include "fdrelay/rates.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fdrelay;

namespace {

ComplexMatrix scalar(double x) { return ComplexMatrix::Constant(1, 1, x); }

ComplexMatrix diag(std::initializer_list<double> d, int rows, int cols) {
    ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
    int i = 0;
    for (double x : d) {
        m(i, i) = x;
        ++i;
    }
    return m;
}

/// L1 diag(sigma_r) R2^H with sigma_r on the first min(d1, d2) entries.
ComplexMatrix aligned_rsi(const SvdTriple& s1, const SvdTriple& s2, const std::vector<double>& sigr_sq) {
    ComplexMatrix d = ComplexMatrix::Zero(s1.left.cols(), s2.right.cols());
    for (std::size_t i = 0; i < sigr_sq.size(); ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = std::sqrt(sigr_sq[i]);
    return s1.left * d * s2.right.adjoint();
}

} // namespace

TEST_CASE("logdet_rate examples") {
    CHECK(logdet_rate(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(logdet_rate(ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2)) == 0.0);
    CHECK(logdet_rate(scalar(3.0), scalar(1.0)) == doctest::Approx(std::log2(10.0)).epsilon(1e-12));
}

TEST_CASE("logdet_rate rejects bad covariances") {
    ComplexMatrix q = ComplexMatrix::Identity(2, 2);
    q(1, 1) = -0.01;
    CHECK_THROWS_AS(logdet_rate(ComplexMatrix::Identity(2, 2), q), InvalidCovariance);
    q = ComplexMatrix::Identity(2, 2);
    q(0, 1) = 0.5;
    CHECK_THROWS_AS(logdet_rate(ComplexMatrix::Identity(2, 2), q), InvalidCovariance);
    q(0, 1) = 0.0;
    q(1, 1) = -1e-12;
    CHECK_NOTHROW(logdet_rate(ComplexMatrix::Identity(2, 2), q));
    CHECK_THROWS_AS(logdet_rate(ComplexMatrix::Identity(2, 3), ComplexMatrix::Identity(2, 2)), InvalidInput);
}

TEST_CASE("fd_sr_rate examples") {
    std::mt19937_64 rng(1);
    const ComplexMatrix h1 = oracle::random_matrix(3, 2, rng);
    const ComplexMatrix qs = oracle::random_psd(2, 5.0, rng);
    const ComplexMatrix qr = oracle::random_psd(2, 5.0, rng);
    CHECK(std::abs(fd_sr_rate(h1, qs, ComplexMatrix::Zero(3, 2), qr) - logdet_rate(h1, qs)) < 1e-12);
    CHECK(fd_sr_rate(scalar(1), scalar(5), scalar(1), scalar(5)) == doctest::Approx(std::log2(1.0 + 5.0 / 6.0)).epsilon(1e-12));
    CHECK(fd_sr_rate_binomial(scalar(1), scalar(5), scalar(1), scalar(5)) ==
          doctest::Approx(0.87446911791614).epsilon(1e-10));
}

TEST_CASE("ratio form and binomial inverse form agree") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = dim(rng), kr = dim(rng), kt = dim(rng);
        const ComplexMatrix h1 = oracle::random_matrix(kr, m, rng);
        const ComplexMatrix hr = oracle::random_matrix(kr, kt, rng, 0.5);
        const ComplexMatrix qs = oracle::random_psd(m, 5.0, rng);
        const ComplexMatrix qr = oracle::random_psd(kt, 5.0, rng);
        CHECK(std::abs(fd_sr_rate(h1, qs, hr, qr) - fd_sr_rate_binomial(h1, qs, hr, qr)) < 1e-8);
    }
}

TEST_CASE("scalar_fd_sr_rate") {
    const std::vector<double> s1{2.0, 0.5}, gs{3.0, 1.0}, gr{1.0, 1.0}, zero{0.0, 0.0};
    CHECK(scalar_fd_sr_rate(s1, gs, gr, zero) == doctest::Approx(std::log2(7.0) + std::log2(1.5)).epsilon(1e-12));
    const std::vector<double> a{1.0}, b{5.0}, c{5.0}, d{2.0};
    CHECK(scalar_fd_sr_rate(a, b, c, d) == doctest::Approx(std::log2(1.0 + 5.0 / 11.0)).epsilon(1e-12));
    CHECK(scalar_fd_sr_rate(a, b, c, d) == doctest::Approx(0.5405683813627).epsilon(1e-10));
    const std::vector<double> neg{-1.0};
    CHECK_THROWS_AS(scalar_fd_sr_rate(a, neg, c, d), InvalidInput);
    const std::vector<double> shorter{3.0};
    CHECK(scalar_fd_sr_rate(s1, shorter, gr, zero) == doctest::Approx(std::log2(7.0)).epsilon(1e-12));
}

TEST_CASE("aligned matrix form equals the scalar form") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> dim(1, 4);
    std::uniform_real_distribution<double> unif(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = dim(rng), kr = dim(rng), kt = dim(rng), n = dim(rng);
        const ComplexMatrix h1 = oracle::random_matrix(kr, m, rng);
        const ComplexMatrix h2 = oracle::random_matrix(n, kt, rng);
        const SvdTriple s1 = svd(h1), s2 = svd(h2);
        const std::size_t d1 = s1.singular_values.size(), d2 = s2.singular_values.size();
        std::vector<double> gs(d1), gr(d2), sr(std::min(d1, d2));
        for (double& x : gs) x = unif(rng);
        for (double& x : gr) x = unif(rng);
        for (double& x : sr) x = unif(rng);
        const ComplexMatrix qs = covariance_from_modes(s1.right, gs);
        const ComplexMatrix qr = covariance_from_modes(s2.right, gr);
        const double matrix_form = fd_sr_rate(h1, qs, aligned_rsi(s1, s2, sr), qr);
        CHECK(std::abs(matrix_form - scalar_fd_sr_rate(s1.gains(), gs, gr, sr)) < 1e-8);
        CHECK(std::abs(fd_rd_rate(h2, qr) - oracle::rate(s2.gains(), gr)) < 1e-8);
    }
}

TEST_CASE("fd_sr_rate decreases as the aligned RSI grows") {
    std::mt19937_64 rng(4);
    const ComplexMatrix h1 = oracle::random_matrix(3, 2, rng);
    const ComplexMatrix h2 = oracle::random_matrix(3, 2, rng);
    const SvdTriple s1 = svd(h1), s2 = svd(h2);
    const std::vector<double> p{2.5, 2.5};
    const ComplexMatrix qs = covariance_from_modes(s1.right, p);
    const ComplexMatrix qr = covariance_from_modes(s2.right, p);
    double prev = fd_sr_rate(h1, qs, ComplexMatrix::Zero(3, 2), qr);
    for (double t = 0.25; t <= 20.0; t += 0.25) {
        const double r = fd_sr_rate(h1, qs, aligned_rsi(s1, s2, {0.7 * t, 0.3 * t}), qr);
        CHECK(r <= prev + 1e-12);
        prev = r;
    }
}

TEST_CASE("fd_rd_rate examples") {
    CHECK(fd_rd_rate(ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2)) == 0.0);
    CHECK(fd_rd_rate(scalar(1), scalar(5)) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
}

TEST_CASE("hd_optimal examples") {
    HdDesign d = hd_optimal(scalar(1), scalar(1), 5.0, 5.0);
    CHECK(d.rate.r_end2end == doctest::Approx(0.5 * std::log2(6.0)).epsilon(1e-12));
    CHECK(d.rate.r_end2end == doctest::Approx(1.2925).epsilon(1e-4));

    d = hd_optimal(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2), 5.0, 5.0);
    CHECK(d.rate.r_end2end == doctest::Approx(std::log2(3.5)).epsilon(1e-12));
    CHECK(d.rate.r_end2end == doctest::Approx(1.8074).epsilon(1e-4));

    d = hd_optimal(ComplexMatrix::Zero(3, 2), ComplexMatrix::Identity(2, 2), 5.0, 5.0);
    CHECK(d.rate.r_end2end == 0.0);
    CHECK(d.rate.r_sr == 0.0);

    CHECK(hd_optimal(diag({2, 1}, 3, 2), diag({2, 1}, 3, 2), 5.0, 5.0).rate.r_end2end > 0.0);
}

TEST_CASE("hd_optimal invariants on random channels") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix h1 = oracle::random_matrix(3, 2, rng);
        const ComplexMatrix h2 = oracle::random_matrix(3, 2, rng);
        const HdDesign d = hd_optimal(h1, h2, 5.0, 4.0);
        CHECK(d.q_src.trace().real() <= 5.0 + 1e-9);
        CHECK(d.q_relay.trace().real() <= 4.0 + 1e-9);
        CHECK(d.rate.r_end2end == doctest::Approx(0.5 * std::min(d.rate.r_sr, d.rate.r_rd)));

        const SvdTriple s1 = svd(h1);
        for (int i = 0; i < 2; ++i) {
            const Eigen::VectorXcd v = s1.right.col(i);
            CHECK((d.q_src * v - d.alloc_src.powers[static_cast<std::size_t>(i)] * v).norm() < 1e-9);
        }

        const RatePair g = hd_rate_from_gains(channel_gains(h1), channel_gains(h2), 5.0, 4.0);
        CHECK(std::abs(g.r_end2end - d.rate.r_end2end) < 1e-12);

        for (int k = 0; k < 100; ++k) {
            CHECK(logdet_rate(h1, oracle::random_psd(2, 5.0, rng)) <= d.rate.r_sr + 1e-9);
            CHECK(logdet_rate(h2, oracle::random_psd(2, 4.0, rng)) <= d.rate.r_rd + 1e-9);
        }
        CHECK(std::abs(logdet_rate(h1, d.q_src) - oracle::log2det_eig(h1, d.q_src)) < 1e-9);
    }
}

TEST_CASE("RatePair conventions") {
    CHECK(RatePair::half_duplex(4.0, 2.0).r_end2end == 1.0);
    CHECK(RatePair::full_duplex(4.0, 2.0).r_end2end == 2.0);
}

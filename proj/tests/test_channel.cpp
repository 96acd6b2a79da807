// SPDX-License-Identifier: Apache-2.0

#include "fdrelay/channel.hpp"
#include "fdrelay/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace fdrelay;

namespace {

double unitary_defect(const ComplexMatrix& u) {
    return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).norm();
}

ComplexMatrix reconstruct(const SvdTriple& s) {
    Eigen::VectorXd sv(static_cast<Eigen::Index>(s.singular_values.size()));
    for (std::size_t i = 0; i < s.singular_values.size(); ++i) sv(static_cast<Eigen::Index>(i)) = s.singular_values[i];
    return s.left * sv.cast<std::complex<double>>().asDiagonal() * s.right.adjoint();
}

} // namespace

TEST_CASE("svd of the identity") {
    const SvdTriple s = svd(ComplexMatrix::Identity(2, 2));
    CHECK(s.singular_values == std::vector<double>{1.0, 1.0});
    CHECK((s.left - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
    CHECK((s.right - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("svd sorts singular values in descending order") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    CHECK(svd(d).singular_values == std::vector<double>{3.0, 1.0});
    d(0, 0) = 1.0;
    d(1, 1) = 3.0;
    const SvdTriple s = svd(d);
    CHECK(s.singular_values[0] == doctest::Approx(3.0));
    CHECK(s.singular_values[1] == doctest::Approx(1.0));
    CHECK(s.gains()[0] == doctest::Approx(9.0));
}

TEST_CASE("svd invariants on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int rows = 1 + trial % 4;
        const int cols = 1 + (trial / 4) % 4;
        const ComplexMatrix h = oracle::random_matrix(rows, cols, rng);
        const SvdTriple s = svd(h);
        REQUIRE(s.singular_values.size() == static_cast<std::size_t>(std::min(rows, cols)));
        CHECK(unitary_defect(s.left) < 1e-9);
        CHECK(unitary_defect(s.right) < 1e-9);
        CHECK((reconstruct(s) - h).norm() < 1e-9);
        CHECK(std::is_sorted(s.singular_values.rbegin(), s.singular_values.rend()));

        const SvdTriple t = svd(h.adjoint());
        for (std::size_t i = 0; i < s.singular_values.size(); ++i)
            CHECK(std::abs(s.singular_values[i] - t.singular_values[i]) < 1e-9);

        const std::vector<double> g = channel_gains(h);
        for (std::size_t i = 0; i < g.size(); ++i)
            CHECK(std::abs(g[i] - s.singular_values[i] * s.singular_values[i]) < 1e-9);
    }
}

TEST_CASE("svd rejects non-finite input") {
    ComplexMatrix h = ComplexMatrix::Identity(2, 2);
    h(1, 0) = {std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK_THROWS_AS(svd(h), InvalidInput);
    h(1, 0) = {0.0, std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(svd(h), InvalidInput);
    CHECK_THROWS_AS(svd(ComplexMatrix(0, 2)), InvalidInput);
}

TEST_CASE("sample_channel is deterministic and shaped") {
    RandomStream a(42), b(42);
    const ComplexMatrix x = sample_channel(2, 2, a);
    const ComplexMatrix y = sample_channel(2, 2, b);
    CHECK(x == y);
    RandomStream c(1);
    const ComplexMatrix z = sample_channel(3, 2, c);
    CHECK(z.rows() == 3);
    CHECK(z.cols() == 2);
    CHECK_THROWS_AS(sample_channel(0, 2, c), InvalidInput);
}

TEST_CASE("sample_channel entry power") {
    RandomStream rng(2024);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += std::norm(sample_channel(1, 1, rng)(0, 0));
    CHECK(sum / n >= 0.98);
    CHECK(sum / n <= 1.02);

    double sum2 = 0.0;
    for (int i = 0; i < 20000; ++i) sum2 += std::norm(sample_channel(1, 1, rng, 2.0)(0, 0));
    CHECK(sum2 / 20000 == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("sample_channel columns are uncorrelated") {
    RandomStream rng(99);
    const int n = 10000;
    Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
    for (int k = 0; k < n; ++k) {
        const ComplexMatrix h = sample_channel(1, 2, rng);
        acc += h.adjoint() * h;
    }
    acc /= n;
    CHECK(std::abs(acc(0, 1)) < 0.05);
    CHECK(std::abs(acc(1, 0)) < 0.05);
    CHECK(acc(0, 0).real() == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("child seeds differ per trial and per master seed") {
    CHECK(child_seed(1, 0) != child_seed(1, 1));
    CHECK(child_seed(1, 0) != child_seed(2, 0));
    CHECK(child_seed(5, 3) == child_seed(5, 3));
    CHECK(splitmix64(0) != 0);
}

TEST_CASE("covariance_from_modes") {
    const std::vector<double> p{2.0, 3.0};
    ComplexMatrix q = covariance_from_modes(ComplexMatrix::Identity(2, 2), p);
    ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
    expect(0, 0) = 2.0;
    expect(1, 1) = 3.0;
    CHECK((q - expect).norm() < 1e-15);

    const std::vector<double> zeros{0.0, 0.0};
    CHECK(covariance_from_modes(ComplexMatrix::Identity(2, 2), zeros).norm() == 0.0);

    std::mt19937_64 rng(3);
    const ComplexMatrix u = oracle::random_unitary(2, rng);
    const std::vector<double> ones{1.0, 1.0};
    q = covariance_from_modes(u, ones);
    CHECK((q - u * u.adjoint()).norm() < 1e-12);
    CHECK(std::abs(q.trace().real() - 2.0) < 1e-9);

    const std::vector<double> bad{1.0, -0.1};
    CHECK_THROWS_AS(covariance_from_modes(u, bad), InvalidInput);
    const std::vector<double> too_many{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(covariance_from_modes(u, too_many), InvalidInput);
}

TEST_CASE("covariance trace equals total power") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 4;
        const ComplexMatrix u = oracle::random_unitary(n, rng);
        std::vector<double> p(static_cast<std::size_t>(1 + trial % n));
        double total = 0.0;
        for (double& x : p) total += (x = unif(rng));
        const ComplexMatrix q = covariance_from_modes(u, p);
        CHECK(std::abs(q.trace().real() - total) < 1e-9);
        CHECK((q - q.adjoint()).norm() < 1e-12);
        CHECK(Eigen::SelfAdjointEigenSolver<ComplexMatrix>(q).eigenvalues().minCoeff() > -1e-9);
    }
}

TEST_CASE("SystemConfig validation and degrees of freedom") {
    SystemConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.dof_sr() == 2);
    CHECK(cfg.dof_rd() == 2);
    cfg.k_tx = 4;
    cfg.n_dst = 3;
    CHECK(cfg.dof_rd() == 3);

    SystemConfig bad;
    bad.m_src = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    bad = SystemConfig{};
    bad.p_relay = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    bad = SystemConfig{};
    bad.t_bound = -1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidInput);

    CHECK(duplex_mode_from_string("hd") == DuplexMode::half_duplex);
    CHECK(duplex_mode_from_string(to_string(DuplexMode::full_duplex)) == DuplexMode::full_duplex);
    CHECK_THROWS_AS(duplex_mode_from_string("simplex"), InvalidInput);
}

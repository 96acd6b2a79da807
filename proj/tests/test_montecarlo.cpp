// SPDX-License-Identifier: Apache-2.0

#include "fdrelay/errors.hpp"
#include "fdrelay/montecarlo.hpp"
#include "fdrelay/rates.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>

using namespace fdrelay;

namespace {

SystemConfig small_config() {
    SystemConfig cfg;
    cfg.entry_variance = 2.0;
    return cfg;
}

RunOptions with_workers(int w) {
    RunOptions o;
    o.workers = w;
    return o;
}

} // namespace

TEST_CASE("parallel_for visits every index once") {
    std::vector<int> hits(1000, 0);
    parallel_for(1000, 4, [&](int i) { ++hits[static_cast<std::size_t>(i)]; });
    for (int h : hits) CHECK(h == 1);
    parallel_for(0, 4, [](int) { FAIL("called"); });
    CHECK_THROWS_AS(parallel_for(10, 3, [](int i) { if (i == 7) throw InvalidInput("boom"); }), InvalidInput);
}

TEST_CASE("mean_and_se") {
    const auto [m, se] = mean_and_se({1.0, 2.0, 3.0, 4.0});
    CHECK(m == 2.5);
    CHECK(se == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
    CHECK(mean_and_se({}).first == 0.0);
    CHECK(mean_and_se({7.0}).second == 0.0);
}

TEST_CASE("run_trials is deterministic and worker independent") {
    SystemConfig cfg = small_config();
    cfg.t_bound = 2.0;
    const auto a = run_trials(cfg, 40, 9);
    const auto b = run_trials(cfg, 40, 9);
    const auto c = run_trials(cfg, 40, 9, with_workers(3));
    REQUIRE(a.size() == 40);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].trial_index == static_cast<int>(i));
        CHECK(a[i].seed == child_seed(9, i));
        CHECK(a[i].r_hd == b[i].r_hd);
        CHECK(a[i].r_fd_worst == b[i].r_fd_worst);
        CHECK(a[i].r_hd == c[i].r_hd);
        CHECK(a[i].r_fd_worst == c[i].r_fd_worst);
        CHECK(a[i].r_hd >= 0.0);
        CHECK(a[i].r_fd_worst >= 0.0);
    }
    CHECK(run_trials(cfg, 5, 10)[0].r_hd != a[0].r_hd);
    CHECK_THROWS_AS(run_trials(cfg, 0, 1), InvalidInput);
}

TEST_CASE("FD at T=0 is exactly twice HD per trial") {
    const auto recs = run_trials(small_config(), 200, 3);
    for (const TrialRecord& r : recs) CHECK(r.r_fd_worst == 2.0 * r.r_hd);

    const SweepReport rep = sweep_t(small_config(), {0.0}, 200, 3);
    CHECK(rep.mean_rates_fd[0] == doctest::Approx(2.0 * rep.mean_rates_hd[0]).epsilon(1e-14));
}

TEST_CASE("sweep_t reuses channels across T") {
    const SystemConfig cfg = small_config();
    const std::vector<double> tp{0.0, 0.04, 0.5, 1.0, 2.0, 4.0};
    const SweepReport a = sweep_t(cfg, tp, 60, 5);
    const SweepReport b = sweep_t(cfg, tp, 60, 5, with_workers(4), true);
    REQUIRE(a.mean_rates_fd.size() == tp.size());
    for (std::size_t k = 0; k < tp.size(); ++k) {
        CHECK(a.mean_rates_hd[k] == a.mean_rates_hd[0]);
        CHECK(a.mean_rates_fd[k] == b.mean_rates_fd[k]);
        CHECK(a.se_fd[k] == b.se_fd[k]);
        CHECK(b.mean_rates_ub[k] >= b.mean_rates_fd[k] - 1e-12);
        if (k > 0) CHECK(a.mean_rates_fd[k] <= a.mean_rates_fd[k - 1]);
    }
    CHECK_FALSE(a.has_upper_bound());
    CHECK(b.has_upper_bound());
    CHECK_THROWS_AS(sweep_t(cfg, {1.0, 0.5}, 10, 1), InvalidInput);
    CHECK_THROWS_AS(sweep_t(cfg, {-1.0}, 10, 1), InvalidInput);
    CHECK(sweep_t(cfg, {}, 10, 1).mean_rates_fd.empty());
}

TEST_CASE("standard errors shrink like one over root L") {
    const SystemConfig cfg = small_config();
    auto hd_se = [&](int l) {
        std::vector<double> r(static_cast<std::size_t>(l));
        for (int i = 0; i < l; ++i) {
            const TrialChannels t = draw_trial(cfg, 1, i);
            r[static_cast<std::size_t>(i)] = hd_rate_from_gains(t.sig1_sq, t.sig2_sq, 5.0, 5.0).r_end2end;
        }
        return mean_and_se(r).second;
    };
    const double s500 = hd_se(500), s2000 = hd_se(2000), s8000 = hd_se(8000);
    CHECK(std::abs(s500 / s2000 - 2.0) <= 0.2 * 2.0);
    CHECK(std::abs(s2000 / s8000 - 2.0) <= 0.2 * 2.0);
}

TEST_CASE("find_threshold brackets") {
    const SystemConfig cfg = small_config();
    CHECK_THROWS_AS(find_threshold(cfg, 40.0, 60.0, 30, 1, 0.1), NoCrossing);
    try {
        find_threshold(cfg, 40.0, 60.0, 30, 1, 0.1);
    } catch (const NoCrossing& e) {
        CHECK(e.fd_lo < e.hd);
        CHECK(e.t_lo == 40.0);
    }
    CHECK_THROWS_AS(find_threshold(cfg, 2.0, 1.0, 30, 1, 0.1), InvalidInput);

    const double t = find_threshold(cfg, 0.04, 30.0, 30, 1, 0.05);
    CHECK(t > 0.04);
    CHECK(t < 30.0);
}

TEST_CASE("antenna_split_study") {
    SystemConfig base = small_config();
    const std::vector<AntennaSplit> one{{4, 8}};
    const auto reps = antenna_split_study(base, 2, 10, 12, one, {0.04}, 20, 1);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].config.k_tx == 4);
    CHECK(reps[0].config.k_rx == 8);
    CHECK(reps[0].config.n_dst == 10);
    const std::vector<AntennaSplit> bad{{4, 7}};
    CHECK_THROWS_AS(antenna_split_study(base, 2, 10, 12, bad, {0.04}, 20, 1), InvalidInput);
}

TEST_CASE("oracle instances are reproducible") {
    const OracleInstance a = oracle_instance(3, 5, 2);
    const OracleInstance b = oracle_instance(3, 5, 2);
    CHECK(a.sig1_sq == b.sig1_sq);
    CHECK(a.gamma_r_bar == b.gamma_r_bar);
    CHECK(a.t_bound == b.t_bound);
    CHECK(a.t_bound >= 0.2);
    CHECK(a.t_bound <= 15.0);
}

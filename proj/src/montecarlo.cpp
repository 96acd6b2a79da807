// SPDX-License-Identifier: Apache-2.0

#include "fdrelay/montecarlo.hpp"

#include "fdrelay/errors.hpp"
#include "fdrelay/rates.hpp"
#include "fdrelay/waterfill.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace fdrelay {

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    workers = std::clamp(workers, 1, n);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

std::pair<ComplexMatrix, ComplexMatrix> draw_channels(const SystemConfig& cfg, std::uint64_t master_seed, int index) {
    RandomStream rng(child_seed(master_seed, static_cast<std::uint64_t>(index)));
    ComplexMatrix h1 = sample_channel(cfg.k_rx, cfg.m_src, rng, cfg.entry_variance);
    ComplexMatrix h2 = sample_channel(cfg.n_dst, cfg.k_tx, rng, cfg.entry_variance);
    return {std::move(h1), std::move(h2)};
}

TrialChannels draw_trial(const SystemConfig& cfg, std::uint64_t master_seed, int index) {
    TrialChannels t;
    t.seed = child_seed(master_seed, static_cast<std::uint64_t>(index));
    const auto [h1, h2] = draw_channels(cfg, master_seed, index);
    t.sig1_sq = channel_gains(h1);
    t.sig2_sq = channel_gains(h2);
    return t;
}

std::pair<double, double> mean_and_se(const std::vector<double>& values) {
    if (values.empty()) return {0.0, 0.0};
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

namespace {

std::vector<TrialChannels> draw_all(const SystemConfig& cfg, int l_trials, std::uint64_t master_seed, int workers) {
    std::vector<TrialChannels> out(static_cast<std::size_t>(l_trials));
    parallel_for(l_trials, workers, [&](int i) { out[static_cast<std::size_t>(i)] = draw_trial(cfg, master_seed, i); });
    return out;
}

double hd_rate(const TrialChannels& t, const SystemConfig& cfg) {
    return hd_rate_from_gains(t.sig1_sq, t.sig2_sq, cfg.p_src, cfg.p_relay).r_end2end;
}

SystemConfig with_t(SystemConfig cfg, double t_over_p) {
    cfg.t_bound = t_over_p * cfg.p_src;
    cfg.mode = DuplexMode::full_duplex;
    return cfg;
}

void check_run_args(const SystemConfig& cfg, int l_trials, const RunOptions& opts) {
    cfg.validate();
    opts.robust.validate();
    if (l_trials < 1) throw InvalidInput("l_trials must be >= 1");
    if (opts.workers < 1) throw InvalidInput("workers must be >= 1");
}

} // namespace

std::vector<TrialRecord> run_trials(const SystemConfig& cfg, int l_trials, std::uint64_t master_seed,
                                    const RunOptions& opts) {
    check_run_args(cfg, l_trials, opts);
    SystemConfig fd_cfg = cfg;
    fd_cfg.mode = DuplexMode::full_duplex;

    std::vector<TrialRecord> out(static_cast<std::size_t>(l_trials));
    parallel_for(l_trials, opts.workers, [&](int i) {
        const TrialChannels t = draw_trial(cfg, master_seed, i);
        TrialRecord& r = out[static_cast<std::size_t>(i)];
        r.trial_index = i;
        r.seed = t.seed;
        r.r_hd = hd_rate(t, cfg);
        r.r_fd_worst = robust_design_from_gains(t.sig1_sq, t.sig2_sq, fd_cfg, opts.robust).rates.r_end2end;
    });
    return out;
}

SweepReport sweep_t(const SystemConfig& cfg, const std::vector<double>& t_over_p, int l_trials,
                    std::uint64_t master_seed, const RunOptions& opts, bool with_upper_bound) {
    check_run_args(cfg, l_trials, opts);
    for (std::size_t k = 0; k < t_over_p.size(); ++k) {
        if (!(t_over_p[k] >= 0.0) || !std::isfinite(t_over_p[k])) throw InvalidInput("t_over_p values must be >= 0");
        if (k > 0 && t_over_p[k] < t_over_p[k - 1]) throw InvalidInput("t_over_p values must be ascending");
    }

    const std::size_t nt = t_over_p.size();
    const auto L = static_cast<std::size_t>(l_trials);
    std::vector<double> hd(L);
    std::vector<std::vector<double>> fd(nt, std::vector<double>(L));
    std::vector<std::vector<double>> ub(with_upper_bound ? nt : 0, std::vector<double>(L));

    parallel_for(l_trials, opts.workers, [&](int i) {
        const auto idx = static_cast<std::size_t>(i);
        const TrialChannels t = draw_trial(cfg, master_seed, i);
        hd[idx] = hd_rate(t, cfg);
        for (std::size_t k = 0; k < nt; ++k) {
            const SystemConfig c = with_t(cfg, t_over_p[k]);
            const RobustDesignResult wc = robust_design_from_gains(t.sig1_sq, t.sig2_sq, c, opts.robust);
            fd[k][idx] = wc.rates.r_end2end;
            if (with_upper_bound)
                ub[k][idx] = known_rsi_design(t.sig1_sq, t.sig2_sq, wc.sigr_sq, c, opts.robust).rates.r_end2end;
        }
    });

    SweepReport rep;
    rep.config = cfg;
    rep.t_over_p = t_over_p;
    rep.l_trials = l_trials;
    rep.master_seed = master_seed;
    rep.robust = opts.robust;
    const auto [mhd, sehd] = mean_and_se(hd);
    for (std::size_t k = 0; k < nt; ++k) {
        rep.mean_rates_hd.push_back(mhd);
        rep.se_hd.push_back(sehd);
        const auto [m, se] = mean_and_se(fd[k]);
        rep.mean_rates_fd.push_back(m);
        rep.se_fd.push_back(se);
        if (with_upper_bound) {
            const auto [mu, seu] = mean_and_se(ub[k]);
            rep.mean_rates_ub.push_back(mu);
            rep.se_ub.push_back(seu);
        }
    }
    return rep;
}

double find_threshold(const SystemConfig& cfg, double t_lo, double t_hi, int l_trials, std::uint64_t master_seed,
                      double tol, const RunOptions& opts) {
    check_run_args(cfg, l_trials, opts);
    if (!(t_lo >= 0.0) || !(t_hi > t_lo)) throw InvalidInput("find_threshold: need 0 <= t_lo < t_hi");
    if (!(tol > 0.0)) throw InvalidInput("find_threshold: tol must be > 0");

    const std::vector<TrialChannels> trials = draw_all(cfg, l_trials, master_seed, opts.workers);
    std::vector<double> hd(trials.size());
    for (std::size_t i = 0; i < trials.size(); ++i) hd[i] = hd_rate(trials[i], cfg);
    const double mean_hd = mean_and_se(hd).first;

    std::vector<double> fd(trials.size());
    auto mean_fd = [&](double t_over_p) {
        const SystemConfig c = with_t(cfg, t_over_p);
        parallel_for(l_trials, opts.workers, [&](int i) {
            const TrialChannels& t = trials[static_cast<std::size_t>(i)];
            fd[static_cast<std::size_t>(i)] =
                robust_design_from_gains(t.sig1_sq, t.sig2_sq, c, opts.robust).rates.r_end2end;
        });
        return mean_and_se(fd).first;
    };

    const double fd_lo = mean_fd(t_lo);
    const double fd_hi = mean_fd(t_hi);
    if (!(fd_lo > mean_hd) || !(fd_hi < mean_hd)) throw NoCrossing(t_lo, fd_lo, t_hi, fd_hi, mean_hd);

    double lo = t_lo;
    double hi = t_hi;
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        const double gap = mean_fd(mid) - mean_hd;
        if (std::abs(gap) <= tol) return mid;
        if (gap > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

OracleInstance oracle_instance(int streams, std::uint64_t master_seed, int index) {
    if (streams < 1) throw InvalidInput("oracle_instance: streams must be >= 1");
    OracleInstance inst;
    inst.seed = child_seed(master_seed, static_cast<std::uint64_t>(index));
    RandomStream rng(inst.seed);
    inst.sig1_sq = channel_gains(sample_channel(streams, streams, rng, 2.0));
    const std::vector<double> relay_gains = channel_gains(sample_channel(streams, streams, rng, 2.0));
    std::uniform_real_distribution<double> relay_budget(1.0, 5.0);
    std::uniform_real_distribution<double> bound(0.2, 15.0);
    inst.gamma_r_bar = waterfill(relay_gains, relay_budget(rng)).powers;
    inst.t_bound = bound(rng);
    return inst;
}

std::vector<SweepReport> antenna_split_study(const SystemConfig& base, int m, int n, int total_relay_antennas,
                                             const std::vector<AntennaSplit>& splits,
                                             const std::vector<double>& t_over_p, int l_trials,
                                             std::uint64_t master_seed, const RunOptions& opts) {
    for (const AntennaSplit& s : splits)
        if (s.k_tx + s.k_rx != total_relay_antennas)
            throw InvalidInput("antenna split " + std::to_string(s.k_tx) + "+" + std::to_string(s.k_rx) +
                               " does not sum to " + std::to_string(total_relay_antennas));

    std::vector<SweepReport> out;
    out.reserve(splits.size());
    for (const AntennaSplit& s : splits) {
        SystemConfig cfg = base;
        cfg.m_src = m;
        cfg.n_dst = n;
        cfg.k_tx = s.k_tx;
        cfg.k_rx = s.k_rx;
        out.push_back(sweep_t(cfg, t_over_p, l_trials, master_seed, opts));
    }
    return out;
}

} // namespace fdrelay

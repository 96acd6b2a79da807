// SPDX-License-Identifier: Apache-2.0

#include "fdrelay/robust.hpp"

#include "fdrelay/errors.hpp"
#include "fdrelay/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fdrelay {

void RobustOptions::validate() const {
    if (!(shrink_c >= 0.9 && shrink_c < 1.0)) throw InvalidInput("shrink_c must lie in [0.9, 1)");
    if (!(outer_tol > 0.0) || !(inner_tol > 0.0)) throw InvalidInput("tolerances must be > 0");
    if (max_outer < 1 || max_inner < 1) throw InvalidInput("iteration limits must be >= 1");
}

int coupled_stream_count(const SystemConfig& cfg) {
    return std::min({cfg.m_src, cfg.k_rx, cfg.k_tx, cfg.n_dst});
}

namespace {

bool any_positive(std::span<const double> v) {
    return std::any_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

void check_nonnegative(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidInput(std::string(what) + " must be finite and >= 0");
}

std::vector<double> padded(std::span<const double> v, std::size_t n) {
    std::vector<double> out(n, 0.0);
    std::copy_n(v.begin(), std::min(n, v.size()), out.begin());
    return out;
}

std::vector<double> source_response(const std::vector<double>& effective, double p_src) {
    if (!any_positive(effective)) return std::vector<double>(effective.size(), 0.0);
    return waterfill(effective, p_src).powers;
}

std::vector<double> effective_gains(std::span<const double> sig1_sq, std::span<const double> gamma_r,
                                    std::span<const double> sigr_sq) {
    std::vector<double> v(sig1_sq.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = sig1_sq[i] / (1.0 + gamma_r[i] * sigr_sq[i]);
    return v;
}

WorstCaseSolution evaluate(std::span<const double> sig1_sq, std::span<const double> gamma_r,
                           std::vector<double> sigr_sq, double p_src) {
    WorstCaseSolution s;
    s.effective_gains = effective_gains(sig1_sq, gamma_r, sigr_sq);
    s.gamma_s = source_response(s.effective_gains, p_src);
    s.rate_sr = scalar_fd_sr_rate(sig1_sq, s.gamma_s, gamma_r, sigr_sq);
    s.sigr_sq = std::move(sigr_sq);
    return s;
}

} // namespace

WorstCaseSolution worst_case_inner(std::span<const double> sig1_sq, int coupled_count,
                                   std::span<const double> gamma_r_bar, double p_src, double t_bound, double tol,
                                   int max_iter) {
    check_nonnegative(sig1_sq, "sig1_sq");
    check_nonnegative(gamma_r_bar, "gamma_r_bar");
    if (!(p_src > 0.0)) throw InvalidInput("worst_case_inner: p_src must be > 0");
    if (!(t_bound >= 0.0) || !std::isfinite(t_bound)) throw InvalidInput("worst_case_inner: t_bound must be >= 0");
    if (!(tol > 0.0) || max_iter < 1) throw InvalidInput("worst_case_inner: bad iteration controls");

    const std::size_t n = sig1_sq.size();
    const std::size_t coupled = std::min(n, static_cast<std::size_t>(std::max(coupled_count, 0)));
    const std::vector<double> gr = padded(gamma_r_bar, n);

    if (t_bound == 0.0 || !any_positive(sig1_sq)) return evaluate(sig1_sq, gr, std::vector<double>(n, 0.0), p_src);

    std::vector<double> gamma_s = source_response(std::vector<double>(sig1_sq.begin(), sig1_sq.end()), p_src);
    std::vector<double> previous(n, 1.0);
    WorstCaseSolution best;
    best.rate_sr = std::numeric_limits<double>::infinity();

    std::vector<double> u(n);
    for (int q = 1; q <= max_iter; ++q) {
        for (std::size_t i = 0; i < n; ++i)
            u[i] = (i < coupled && gr[i] > 0.0) ? sig1_sq[i] * gamma_s[i] / gr[i] : 0.0;

        std::vector<double> sigr_sq(n, 0.0);
        double level = 0.0;
        if (any_positive(u)) {
            PowerAllocation a = waterfill(u, t_bound);
            sigr_sq = std::move(a.powers);
            level = a.water_level;
        }

        double moved = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = std::sqrt(sigr_sq[i]) - std::sqrt(previous[i]);
            moved += d * d;
        }
        previous = sigr_sq;

        WorstCaseSolution cur = evaluate(sig1_sq, gr, std::move(sigr_sq), p_src);
        cur.water_level_si = level;
        cur.iterations = q;
        gamma_s = cur.gamma_s;

        if (std::sqrt(moved) <= tol) {
            cur.converged = true;
            return cur;
        }
        if (cur.rate_sr < best.rate_sr) best = std::move(cur);
    }
    best.converged = false;
    best.iterations = max_iter;
    return best;
}

WorstCaseSolution brute_force_worst_case(std::span<const double> sig1_sq, std::span<const double> gamma_r_bar,
                                         double p_src, double t_bound, int grid_points) {
    check_nonnegative(sig1_sq, "sig1_sq");
    check_nonnegative(gamma_r_bar, "gamma_r_bar");
    const std::size_t n = sig1_sq.size();
    if (n < 1 || n > 3) throw UnsupportedSize("brute_force_worst_case: 1 to 3 streams supported");
    if (grid_points < 100) throw InvalidInput("brute_force_worst_case: grid_points must be >= 100");
    if (!(p_src > 0.0)) throw InvalidInput("brute_force_worst_case: p_src must be > 0");
    if (!(t_bound >= 0.0) || !std::isfinite(t_bound)) throw InvalidInput("brute_force_worst_case: t_bound must be >= 0");

    const std::vector<double> gr = padded(gamma_r_bar, n);
    if (t_bound == 0.0) return evaluate(sig1_sq, gr, std::vector<double>(n, 0.0), p_src);
    if (n == 1) return evaluate(sig1_sq, gr, {t_bound}, p_src);

    // simplex lattice with `steps` intervals per axis
    int steps = grid_points - 1;
    if (n == 3) {
        steps = 1;
        while ((steps + 1) * (steps + 2) / 2 < grid_points) ++steps;
    }
    const double h = t_bound / steps;

    WorstCaseSolution best;
    best.rate_sr = std::numeric_limits<double>::infinity();
    auto consider = [&](std::vector<double> x) {
        WorstCaseSolution cur = evaluate(sig1_sq, gr, std::move(x), p_src);
        if (cur.rate_sr < best.rate_sr) best = std::move(cur);
    };
    if (n == 2) {
        for (int i = 0; i <= steps; ++i) consider({i * h, (steps - i) * h});
    } else {
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; i + j <= steps; ++j) consider({i * h, j * h, (steps - i - j) * h});
    }

    // |dR/dx_i| <= gamma_r_i / ln 2, and the nearest lattice point is within
    // n*h in 1-norm of any simplex point.
    const double g_max = *std::max_element(gr.begin(), gr.end());
    best.grid_bound = g_max / std::numbers::ln2 * static_cast<double>(n) * h;
    best.iterations = 0;
    return best;
}

namespace {

struct HopGains {
    std::vector<double> sr;
    std::vector<double> rd;
};

HopGains truncated_gains(std::span<const double> sig1_sq, std::span<const double> sig2_sq, const SystemConfig& cfg) {
    check_nonnegative(sig1_sq, "sig1_sq");
    check_nonnegative(sig2_sq, "sig2_sq");
    return {padded(sig1_sq, static_cast<std::size_t>(cfg.dof_sr())),
            padded(sig2_sq, static_cast<std::size_t>(cfg.dof_rd()))};
}

// Shared relay back-off loop; `source_side` maps the coupling vector to the
// source-relay solution of one outer iteration. Without `early_stop` all
// max_outer budgets are visited.
template <typename SourceSide>
RobustDesignResult backoff_loop(const HopGains& g, const SystemConfig& cfg, const RobustOptions& opts,
                                bool early_stop, SourceSide&& source_side) {
    RobustDesignResult res;
    res.alignment_not_worst_case = cfg.dof_rd() < cfg.dof_sr();
    res.gamma_s.assign(g.sr.size(), 0.0);
    res.gamma_r.assign(g.rd.size(), 0.0);
    res.sigr_sq.assign(g.sr.size(), 0.0);
    if (!any_positive(g.sr) || !any_positive(g.rd)) {
        res.trace.push_back({1, cfg.p_relay, 0.0, 0.0, 0.0, true});
        res.relay_budget_used = 0.0;
        res.rates = RatePair::full_duplex(0.0, 0.0);
        return res;
    }

    const std::size_t truncate_to = static_cast<std::size_t>(std::min(cfg.m_src, cfg.k_tx));
    double relay_budget = cfg.p_relay;
    double best_r = -1.0;
    res.converged = false;
    for (int l = 1; l <= opts.max_outer; ++l) {
        const PowerAllocation relay = waterfill(g.rd, relay_budget);
        std::vector<double> coupling(g.sr.size(), 0.0);
        std::copy_n(relay.powers.begin(), std::min({truncate_to, relay.powers.size(), coupling.size()}),
                    coupling.begin());

        const WorstCaseSolution wc = source_side(coupling);
        const double r_rd = waterfill_rate(g.rd, relay);
        const double r = std::min(wc.rate_sr, r_rd);
        res.trace.push_back({l, relay_budget, wc.rate_sr, r_rd, r, wc.converged});

        if (r > best_r) {
            best_r = r;
            res.best_index = l - 1;
            res.gamma_s = wc.gamma_s;
            res.gamma_r = relay.powers;
            res.sigr_sq = wc.sigr_sq;
            res.relay_budget_used = relay_budget;
            res.rates = RatePair::full_duplex(wc.rate_sr, r_rd);
        }
        if (early_stop && l >= 2 && std::abs(r - res.trace[res.trace.size() - 2].r) <= opts.outer_tol) {
            res.converged = true;
            break;
        }
        relay_budget *= opts.shrink_c;
    }
    return res;
}

} // namespace

RobustDesignResult robust_design_from_gains(std::span<const double> sig1_sq, std::span<const double> sig2_sq,
                                            const SystemConfig& cfg, const RobustOptions& opts) {
    cfg.validate();
    opts.validate();
    if (cfg.mode != DuplexMode::full_duplex) throw InvalidInput("robust_design: config must be full_duplex");
    const HopGains g = truncated_gains(sig1_sq, sig2_sq, cfg);
    const int coupled = coupled_stream_count(cfg);
    return backoff_loop(g, cfg, opts, true, [&](const std::vector<double>& coupling) {
        return worst_case_inner(g.sr, coupled, coupling, cfg.p_src, cfg.t_bound, opts.inner_tol, opts.max_inner);
    });
}

RobustDesignResult robust_design(const ComplexMatrix& h1, const ComplexMatrix& h2, const SystemConfig& cfg,
                                 const RobustOptions& opts) {
    cfg.validate();
    if (h1.rows() != cfg.k_rx || h1.cols() != cfg.m_src)
        throw InvalidInput("robust_design: h1 must be k_rx x m_src");
    if (h2.rows() != cfg.n_dst || h2.cols() != cfg.k_tx)
        throw InvalidInput("robust_design: h2 must be n_dst x k_tx");
    const std::vector<double> g1 = channel_gains(h1);
    const std::vector<double> g2 = channel_gains(h2);
    return robust_design_from_gains(g1, g2, cfg, opts);
}

RobustDesignResult known_rsi_design(std::span<const double> sig1_sq, std::span<const double> sig2_sq,
                                    std::span<const double> sigr_sq, const SystemConfig& cfg,
                                    const RobustOptions& opts) {
    cfg.validate();
    opts.validate();
    check_nonnegative(sigr_sq, "sigr_sq");
    const HopGains g = truncated_gains(sig1_sq, sig2_sq, cfg);
    const std::vector<double> rsi = padded(sigr_sq, g.sr.size());
    RobustDesignResult res = backoff_loop(g, cfg, opts, false, [&](const std::vector<double>& coupling) {
        WorstCaseSolution s = evaluate(g.sr, coupling, rsi, cfg.p_src);
        s.converged = true;
        return s;
    });
    res.converged = true;
    return res;
}

} // namespace fdrelay

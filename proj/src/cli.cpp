// SPDX-License-Identifier: Apache-2.0

#include "fdrelay/cli.hpp"

#include "fdrelay/errors.hpp"
#include "fdrelay/montecarlo.hpp"
#include "fdrelay/rates.hpp"
#include "fdrelay/report.hpp"
#include "fdrelay/robust.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fdrelay {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_value(const std::string& key, const std::string& text) {
    const std::string v = trim(text);
    T out{};
    const char* first = v.data();
    const char* last = v.data() + v.size();
    if constexpr (std::is_unsigned_v<T>) {
        if (!v.empty() && v.front() == '-') throw InvalidInput(key + ": expected a non-negative integer, got '" + v + "'");
    }
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (v.empty() || ec != std::errc{} || ptr != last)
        throw InvalidInput(key + ": cannot parse '" + v + "'");
    return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

std::string join(std::span<const double> values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += format_number(values[i]);
    }
    return s;
}

void check_spec(const RunSpec& spec) {
    spec.config.validate();
    spec.robust.validate();
    if (spec.l_trials < 1) throw InvalidInput("l_trials must be >= 1");
    if (spec.workers < 1) throw InvalidInput("workers must be >= 1");
}

class UsageError : public Error {
public:
    using Error::Error;
};

std::uint64_t require_seed(const RunSpec& spec) {
    if (!spec.master_seed) throw UsageError("missing --seed (or master_seed in the config file)");
    return *spec.master_seed;
}

/// Writes to --out when given, otherwise to the console stream.
template <class Fn>
void with_output(const std::string& path, std::ostream& console, Fn&& fn) {
    if (path.empty()) {
        fn(console);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    fn(file);
    file.flush();
    if (!file) throw Error("failed writing '" + path + "'");
}

// Flags shared by the subcommands. Values are only applied when the flag was
// given, so they override the config file.
struct Flags {
    std::vector<std::string> config_paths;
    std::uint64_t seed = 0;
    int m = 0, kt = 0, kr = 0, n = 0;
    double ps = 0, pr = 0, p = 0, t = 0, variance = 0;
    std::string mode;
    double c = 0, outer_tol = 0, inner_tol = 0;
    int max_outer = 0, max_inner = 0;
    int trials = 0, workers = 0;
    std::string out;
    std::string tp;

    struct Setter {
        CLI::App* owner;
        CLI::Option* option;
        std::function<void(RunSpec&)> apply;
    };
    std::vector<Setter> setters;

    template <class T>
    void add(CLI::App* app, const std::string& name, T& target, const std::string& help,
             std::function<void(RunSpec&)> apply) {
        setters.push_back({app, app->add_option(name, target, help), std::move(apply)});
    }

    void add_common(CLI::App* app) {
        app->add_option("--config", config_paths, "config file of `key = value` lines")
            ->check(CLI::ExistingFile);
        add(app, "--seed", seed, "master seed of all random draws (required)",
            [this](RunSpec& s) { s.master_seed = seed; });
        add(app, "--workers", workers, "worker threads; results do not depend on it",
            [this](RunSpec& s) { s.workers = workers; });
    }

    void add_system(CLI::App* app) {
        add(app, "--m", m, "source antennas M", [this](RunSpec& s) { s.config.m_src = m; });
        add(app, "--kt", kt, "relay transmit antennas K_t", [this](RunSpec& s) { s.config.k_tx = kt; });
        add(app, "--kr", kr, "relay receive antennas K_r", [this](RunSpec& s) { s.config.k_rx = kr; });
        add(app, "--n", n, "destination antennas N", [this](RunSpec& s) { s.config.n_dst = n; });
        add(app, "--p", p, "sets both power budgets", [this](RunSpec& s) { s.config.p_src = s.config.p_relay = p; });
        add(app, "--ps", ps, "source power budget P_s", [this](RunSpec& s) { s.config.p_src = ps; });
        add(app, "--pr", pr, "relay power budget P_r", [this](RunSpec& s) { s.config.p_relay = pr; });
        add(app, "--t", t, "RSI uncertainty bound T", [this](RunSpec& s) { s.config.t_bound = t; });
        add(app, "--mode", mode, "half_duplex or full_duplex",
            [this](RunSpec& s) { s.config.mode = duplex_mode_from_string(mode); });
        add(app, "--variance", variance, "variance of each channel entry (default 1)",
            [this](RunSpec& s) { s.config.entry_variance = variance; });
        add(app, "--c", c, "relay budget back-off factor in [0.9, 1)",
            [this](RunSpec& s) { s.robust.shrink_c = c; });
        add(app, "--outer-tol", outer_tol, "outer stopping tolerance (bits)",
            [this](RunSpec& s) { s.robust.outer_tol = outer_tol; });
        add(app, "--max-outer", max_outer, "outer iteration cap", [this](RunSpec& s) { s.robust.max_outer = max_outer; });
        add_inner(app);
    }

    void add_inner(CLI::App* app) {
        add(app, "--inner-tol", inner_tol, "inner stopping tolerance on the RSI singular values",
            [this](RunSpec& s) { s.robust.inner_tol = inner_tol; });
        add(app, "--max-inner", max_inner, "inner iteration cap", [this](RunSpec& s) { s.robust.max_inner = max_inner; });
    }

    void add_trials(CLI::App* app) {
        add(app, "--trials", trials, "Monte-Carlo trials L", [this](RunSpec& s) { s.l_trials = trials; });
    }

    void add_sweep(CLI::App* app) {
        add(app, "--tp", tp, "comma-separated T/P values", [this](RunSpec& s) { s.t_over_p = parse_number_list(tp); });
        add(app, "--out", out, "output file", [this](RunSpec& s) { s.output_path = out; });
    }

    RunSpec resolve(const std::string& command, std::size_t config_index = 0) const {
        RunSpec spec;
        spec.command = command;
        if (config_index < config_paths.size()) apply_config(spec, parse_config_file(config_paths[config_index]));
        for (const Setter& s : setters)
            if (s.option->count() > 0) s.apply(spec);
        check_spec(spec);
        return spec;
    }
};

void print_vector(std::ostream& os, const std::string& key, std::span<const double> v) {
    os << key << " = " << join(v) << '\n';
}

int run_single(const RunSpec& spec, int trial, bool robust, bool trace, std::ostream& out, std::ostream& err) {
    const std::uint64_t seed = require_seed(spec);
    if (trial < 0) throw InvalidInput("--trial must be >= 0");
    const auto [h1, h2] = draw_channels(spec.config, seed, trial);

    with_output(spec.output_path, out, [&](std::ostream& os) {
        os << "# fdrelay " << kVersion << " | " << spec.config.describe() << " | master_seed=" << seed
           << " trial=" << trial << " seed_scheme=" << kSeedScheme << '\n';
        if (!robust) {
            const HdDesign d = hd_optimal(h1, h2, spec.config.p_src, spec.config.p_relay);
            os << "mode = half_duplex\n";
            os << "r_sr = " << format_number(d.rate.r_sr) << '\n';
            os << "r_rd = " << format_number(d.rate.r_rd) << '\n';
            os << "r_end2end = " << format_number(d.rate.r_end2end) << '\n';
            print_vector(os, "gamma_s", d.alloc_src.powers);
            print_vector(os, "gamma_r", d.alloc_relay.powers);
            os << "tau_s = " << format_number(d.alloc_src.water_level) << '\n';
            os << "tau_r = " << format_number(d.alloc_relay.water_level) << '\n';
            return;
        }
        SystemConfig cfg = spec.config;
        cfg.mode = DuplexMode::full_duplex;
        const RobustDesignResult r = robust_design(h1, h2, cfg, spec.robust);
        if (r.alignment_not_worst_case)
            err << "fdrelay: warning: DoF_rd < DoF_sr, aligned RSI only bounds the worst case\n";
        os << "mode = full_duplex\n";
        os << "t_bound = " << format_number(cfg.t_bound) << '\n';
        os << "r_sr = " << format_number(r.rates.r_sr) << '\n';
        os << "r_rd = " << format_number(r.rates.r_rd) << '\n';
        os << "r_end2end = " << format_number(r.rates.r_end2end) << '\n';
        os << "relay_budget_used = " << format_number(r.relay_budget_used) << '\n';
        print_vector(os, "gamma_s", r.gamma_s);
        print_vector(os, "gamma_r", r.gamma_r);
        print_vector(os, "sigr_sq", r.sigr_sq);
        os << "outer_iterations = " << r.trace.size() << '\n';
        os << "best_iteration = " << r.best_index + 1 << '\n';
        os << "converged = " << (r.converged ? "true" : "false") << '\n';
        if (trace) {
            os << "l,relay_budget,r_sr,r_rd,r,inner_converged\n";
            for (const OuterIterate& it : r.trace)
                os << it.l << ',' << format_number(it.relay_budget) << ',' << format_number(it.r_sr) << ','
                   << format_number(it.r_rd) << ',' << format_number(it.r) << ','
                   << (it.inner_converged ? 1 : 0) << '\n';
        }
    });
    return kExitOk;
}

RunOptions run_options(const RunSpec& spec) {
    RunOptions o;
    o.workers = spec.workers;
    o.robust = spec.robust;
    return o;
}

int run_sweep(const RunSpec& spec, bool upper_bound, std::ostream& out) {
    const std::uint64_t seed = require_seed(spec);
    const SweepReport rep = sweep_t(spec.config, spec.t_over_p, spec.l_trials, seed, run_options(spec), upper_bound);
    with_output(spec.output_path, out, [&](std::ostream& os) { write_csv(rep, os); });
    return kExitOk;
}

// One sweep per config file. With --out each report goes to
// <prefix>_<config stem>.csv; otherwise to the config's output_path or stdout.
int run_sweep_set(const Flags& flags, const std::string& command, bool upper_bound, std::ostream& out) {
    std::vector<RunSpec> specs;
    for (std::size_t i = 0; i < flags.config_paths.size(); ++i) specs.push_back(flags.resolve(command, i));
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const RunSpec& spec = specs[i];
        const std::uint64_t seed = require_seed(spec);
        const SweepReport rep =
            sweep_t(spec.config, spec.t_over_p, spec.l_trials, seed, run_options(spec), upper_bound);
        std::string path = spec.output_path;
        if (!flags.out.empty())
            path = flags.out + "_" + std::filesystem::path(flags.config_paths[i]).stem().string() + ".csv";
        if (path.empty()) {
            write_csv(rep, out);
        } else {
            emit_csv(rep, path);
            out << path << '\n';
        }
    }
    return kExitOk;
}

int run_threshold(const RunSpec& spec, double t_lo, double t_hi, double tol, std::ostream& out) {
    const std::uint64_t seed = require_seed(spec);
    const double t_star = find_threshold(spec.config, t_lo, t_hi, spec.l_trials, seed, tol, run_options(spec));
    with_output(spec.output_path, out, [&](std::ostream& os) { os << format_number(t_star) << '\n'; });
    return kExitOk;
}

int run_split_study(const RunSpec& spec, std::optional<int> total, std::ostream& out) {
    const std::uint64_t seed = require_seed(spec);
    if (spec.splits.empty()) throw UsageError("split-study needs at least one --split KT:KR");
    const int total_antennas = total.value_or(spec.splits.front().k_tx + spec.splits.front().k_rx);
    const std::vector<SweepReport> reps =
        antenna_split_study(spec.config, spec.config.m_src, spec.config.n_dst, total_antennas, spec.splits,
                            spec.t_over_p, spec.l_trials, seed, run_options(spec));
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const AntennaSplit& s = spec.splits[i];
        if (spec.output_path.empty()) {
            write_csv(reps[i], out);
        } else {
            const std::string path = spec.output_path + "_kt" + std::to_string(s.k_tx) + "_kr" +
                                     std::to_string(s.k_rx) + ".csv";
            emit_csv(reps[i], path);
            out << path << '\n';
        }
    }
    return kExitOk;
}

struct OracleRow {
    OracleInstance inst;
    double alg = 0.0;
    double oracle = 0.0;
    double grid_bound = 0.0;
    double gap = 0.0;
};

int run_oracle_check(const RunSpec& spec, int streams, int instances, int grid, double max_gap, std::ostream& out,
                     std::ostream& err) {
    const std::uint64_t seed = require_seed(spec);
    if (streams < 1 || streams > 3) throw UsageError("--streams must be 1, 2 or 3");
    if (instances < 1) throw UsageError("--instances must be >= 1");
    if (grid < 100) throw UsageError("--grid must be >= 100");

    std::vector<OracleRow> rows(static_cast<std::size_t>(instances));
    parallel_for(instances, spec.workers, [&](int i) {
        OracleRow& row = rows[static_cast<std::size_t>(i)];
        row.inst = oracle_instance(streams, seed, i);
        const OracleInstance& in = row.inst;
        const WorstCaseSolution alg = worst_case_inner(in.sig1_sq, streams, in.gamma_r_bar, in.p_src, in.t_bound,
                                                       spec.robust.inner_tol, spec.robust.max_inner);
        const WorstCaseSolution orc = brute_force_worst_case(in.sig1_sq, in.gamma_r_bar, in.p_src, in.t_bound, grid);
        row.alg = alg.rate_sr;
        row.oracle = orc.rate_sr;
        row.grid_bound = orc.grid_bound;
        row.gap = std::abs(row.alg - row.oracle) / std::max(std::abs(row.oracle), 1e-12);
    });

    int failures = 0;
    with_output(spec.output_path, out, [&](std::ostream& os) {
        os << "# fdrelay " << kVersion << " | oracle-check streams=" << streams << " instances=" << instances
           << " grid=" << grid << " master_seed=" << seed << " seed_scheme=" << kSeedScheme << '\n';
        os << "instance,seed,t_bound,rate_alg,rate_oracle,rel_gap,grid_bound\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const OracleRow& r = rows[i];
            if (r.gap > max_gap) ++failures;
            os << i << ',' << r.inst.seed << ',' << format_number(r.inst.t_bound) << ',' << format_number(r.alg)
               << ',' << format_number(r.oracle) << ',' << format_number(r.gap) << ','
               << format_number(r.grid_bound) << '\n';
        }
    });
    if (failures > 0) {
        err << "fdrelay: " << failures << " of " << instances << " instances exceed a relative gap of "
            << format_number(max_gap) << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace

std::map<std::string, std::string> parse_config(std::istream& is) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "config line " + std::to_string(lineno);
        if (eq == std::string::npos) throw InvalidInput(where + ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw InvalidInput(where + ": expected `key = value`");
        if (!out.emplace(key, value).second) throw InvalidInput(where + ": repeated key '" + key + "'");
    }
    return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file '" + path + "'");
    try {
        return parse_config(in);
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

void apply_config(RunSpec& spec, const std::map<std::string, std::string>& values) {
    for (const auto& [key, v] : values) {
        SystemConfig& c = spec.config;
        RobustOptions& r = spec.robust;
        if (key == "m_src") c.m_src = parse_value<int>(key, v);
        else if (key == "k_tx") c.k_tx = parse_value<int>(key, v);
        else if (key == "k_rx") c.k_rx = parse_value<int>(key, v);
        else if (key == "n_dst") c.n_dst = parse_value<int>(key, v);
        else if (key == "p_src") c.p_src = parse_value<double>(key, v);
        else if (key == "p_relay") c.p_relay = parse_value<double>(key, v);
        else if (key == "t_bound") c.t_bound = parse_value<double>(key, v);
        else if (key == "mode") c.mode = duplex_mode_from_string(v);
        else if (key == "entry_variance") c.entry_variance = parse_value<double>(key, v);
        else if (key == "shrink_c") r.shrink_c = parse_value<double>(key, v);
        else if (key == "outer_tol") r.outer_tol = parse_value<double>(key, v);
        else if (key == "inner_tol") r.inner_tol = parse_value<double>(key, v);
        else if (key == "max_outer") r.max_outer = parse_value<int>(key, v);
        else if (key == "max_inner") r.max_inner = parse_value<int>(key, v);
        else if (key == "l_trials") spec.l_trials = parse_value<int>(key, v);
        else if (key == "master_seed") spec.master_seed = parse_value<std::uint64_t>(key, v);
        else if (key == "output_path") spec.output_path = v;
        else if (key == "t_over_p") spec.t_over_p = parse_number_list(v);
        else if (key == "splits") spec.splits = parse_split_list(v);
        else if (key == "workers") spec.workers = parse_value<int>(key, v);
        else throw InvalidInput("unknown config key '" + key + "'");
    }
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (const std::string& item : split(text, ',')) out.push_back(parse_value<double>("number list", item));
    return out;
}

std::vector<AntennaSplit> parse_split_list(const std::string& text) {
    std::vector<AntennaSplit> out;
    for (const std::string& item : split(text, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw InvalidInput("split '" + item + "': expected KT:KR");
        out.push_back({parse_value<int>("split", item.substr(0, colon)), parse_value<int>("split", item.substr(colon + 1))});
    }
    return out;
}

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Robust full-duplex MIMO relay design and Monte-Carlo rate sweeps", "fdrelay"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Flags flags;
    int trial = 0;
    bool trace = false;
    bool upper_bound = false;
    double t_lo = 0.0, t_hi = 0.0, tol = 0.01;
    std::vector<std::string> split_args;
    int total = 0;
    int streams = 2, instances = 50, grid = 2000;
    double max_gap = 0.05;

    auto* hd = app.add_subcommand("hd", "optimal half-duplex design for one channel draw");
    auto* fd = app.add_subcommand("fd-robust", "robust full-duplex design for one channel draw");
    for (auto* sub : {hd, fd}) {
        flags.add_common(sub);
        flags.add_system(sub);
        sub->add_option("--trial", trial, "index of the channel draw under --seed");
        flags.add(sub, "--out", flags.out, "output file", [&flags](RunSpec& s) { s.output_path = flags.out; });
    }
    fd->add_flag("--trace", trace, "print the outer iteration trace");

    auto* sweep = app.add_subcommand("sweep", "mean HD and worst-case FD rates over a T/P sweep (CSV)");
    flags.add_common(sweep);
    flags.add_system(sweep);
    flags.add_trials(sweep);
    flags.add_sweep(sweep);
    sweep->get_option("--config")->description("config file of `key = value` lines; repeat for one sweep per file");
    sweep->get_option("--out")->description("output file, or output prefix when several configs are given");
    sweep->add_flag("--upper-bound", upper_bound, "add the known-RSI comparison curve");

    auto* thr = app.add_subcommand("threshold", "T/P at which the mean FD rate drops to the HD rate");
    flags.add_common(thr);
    flags.add_system(thr);
    flags.add_trials(thr);
    thr->add_option("--tlo", t_lo, "lower end of the T/P bracket")->required();
    thr->add_option("--thi", t_hi, "upper end of the T/P bracket")->required();
    thr->add_option("--tol", tol, "bisection tolerance in T/P and in bits")->capture_default_str();
    flags.add(thr, "--out", flags.out, "output file", [&flags](RunSpec& s) { s.output_path = flags.out; });

    auto* study = app.add_subcommand("split-study", "one T/P sweep per relay antenna split");
    flags.add_common(study);
    flags.add_system(study);
    flags.add_trials(study);
    flags.add(study, "--tp", flags.tp, "comma-separated T/P values",
              [&flags](RunSpec& s) { s.t_over_p = parse_number_list(flags.tp); });
    flags.add(study, "--out", flags.out, "output prefix; writes <prefix>_kt<KT>_kr<KR>.csv",
              [&flags](RunSpec& s) { s.output_path = flags.out; });
    auto* split_opt = study->add_option("--split", split_args, "relay split KT:KR (repeatable)");
    auto* total_opt = study->add_option("--total", total, "total relay antennas K_t + K_r");

    auto* oracle = app.add_subcommand("oracle-check", "compare the iterative inner solver with a grid search");
    flags.add_common(oracle);
    flags.add_inner(oracle);
    oracle->add_option("--streams", streams, "streams per instance (1-3)")->capture_default_str();
    oracle->add_option("--instances", instances, "number of random instances")->capture_default_str();
    oracle->add_option("--grid", grid, "minimum simplex grid points")->capture_default_str();
    oracle->add_option("--max-gap", max_gap, "largest accepted relative gap")->capture_default_str();
    flags.add(oracle, "--out", flags.out, "output file", [&flags](RunSpec& s) { s.output_path = flags.out; });

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "fdrelay: " << e.what() << '\n';
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    // Only the setters registered on the chosen subcommand apply.
    std::erase_if(flags.setters, [sub](const Flags::Setter& s) { return s.owner != sub; });

    try {
        if (sub != sweep && flags.config_paths.size() > 1)
            throw UsageError("--config may only be given once for " + sub->get_name());
        if (sub == sweep && flags.config_paths.size() > 1)
            return run_sweep_set(flags, sub->get_name(), upper_bound, out);
        RunSpec spec = flags.resolve(sub->get_name());
        if (sub == study && split_opt->count() > 0) {
            spec.splits.clear();
            for (const std::string& s : split_args) {
                const auto parsed = parse_split_list(s);
                spec.splits.insert(spec.splits.end(), parsed.begin(), parsed.end());
            }
        }
        if (sub == hd) return run_single(spec, trial, false, false, out, err);
        if (sub == fd) return run_single(spec, trial, true, trace, out, err);
        if (sub == sweep) return run_sweep(spec, upper_bound, out);
        if (sub == thr) return run_threshold(spec, t_lo, t_hi, tol, out);
        if (sub == study)
            return run_split_study(spec, total_opt->count() > 0 ? std::optional<int>(total) : std::nullopt, out);
        return run_oracle_check(spec, streams, instances, grid, max_gap, out, err);
    } catch (const UsageError& e) {
        err << "fdrelay: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidInput& e) {
        err << "fdrelay: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnsupportedSize& e) {
        err << "fdrelay: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "fdrelay: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace fdrelay

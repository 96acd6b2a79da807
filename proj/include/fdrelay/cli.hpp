// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fdrelay/channel.hpp"
#include "fdrelay/montecarlo.hpp"
#include "fdrelay/robust.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fdrelay {

/// Everything a CLI invocation needs. Config files set these by field name;
/// command-line flags override the file.
struct RunSpec {
    std::string command;
    SystemConfig config;
    RobustOptions robust;
    int l_trials = 2000;
    std::optional<std::uint64_t> master_seed;
    std::string output_path;
    std::vector<double> t_over_p;
    std::vector<AntennaSplit> splits;
    int workers = 1;
};

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2 };

/// Parses the flat config grammar: one `key = value` per line, `#` starts a
/// comment, blank lines ignored. Throws InvalidInput naming the offending
/// line on malformed input or a repeated key.
std::map<std::string, std::string> parse_config(std::istream& is);
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Applies parsed key/value pairs to `spec`. Keys are the RunSpec field names
/// (m_src, k_tx, k_rx, n_dst, p_src, p_relay, t_bound, mode, entry_variance,
/// shrink_c, outer_tol, inner_tol, max_outer, max_inner, l_trials,
/// master_seed, output_path, t_over_p, splits, workers). Unknown keys are an error.
void apply_config(RunSpec& spec, const std::map<std::string, std::string>& values);

/// Comma-separated list of numbers.
std::vector<double> parse_number_list(const std::string& text);

/// Comma-separated list of `KT:KR` pairs.
std::vector<AntennaSplit> parse_split_list(const std::string& text);

/// Entry point of the `fdrelay` tool. Writes results to `out` and one-line
/// diagnostics to `err`; returns an ExitCode.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fdrelay

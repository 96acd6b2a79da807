// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fdrelay/montecarlo.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fdrelay {

inline constexpr const char* kVersion = FDRELAY_VERSION;

/// CSV layout of a sweep:
///
///   # fdrelay <version> | <config> | l_trials=<L> master_seed=<s> seed_scheme=<...> | <robust knobs>
///   t_over_p,mean_hd,se_hd,mean_fd,se_fd[,mean_ub,se_ub]
///   0.04,3.19...,0.02...,5.97...,0.03...
///
/// Numbers are printed with 15 significant digits and always carry a decimal
/// point. Output depends only on the report, so equal reports give
/// byte-identical files.
void write_csv(const SweepReport& report, std::ostream& os);

/// write_csv into `path`. Throws Error when the file cannot be written.
void emit_csv(const SweepReport& report, const std::string& path);

/// Parsed CSV: the leading comment line (without "# "), column names and rows.
struct CsvTable {
    std::string comment;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Column by name; throws InvalidInput if absent.
    std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

/// "%.15g" that always contains a '.', e.g. 0 -> "0.0".
std::string format_number(double x);

/// Header comment line contents shared by CSV and console output.
std::string describe_run(const SweepReport& report);

} // namespace fdrelay

// SPDX-License-Identifier: Apache-2.0

#include "fdrelay/report.hpp"

#include "fdrelay/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fdrelay {

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    std::string s(buf);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string describe_run(const SweepReport& report) {
    std::ostringstream os;
    os << "fdrelay " << kVersion << " | " << report.config.describe() << " | l_trials=" << report.l_trials
       << " master_seed=" << report.master_seed << " seed_scheme=" << report.seed_scheme
       << " | shrink_c=" << format_number(report.robust.shrink_c)
       << " outer_tol=" << format_number(report.robust.outer_tol)
       << " inner_tol=" << format_number(report.robust.inner_tol) << " max_outer=" << report.robust.max_outer
       << " max_inner=" << report.robust.max_inner;
    return os.str();
}

void write_csv(const SweepReport& report, std::ostream& os) {
    const bool ub = report.has_upper_bound();
    os << "# " << describe_run(report) << '\n';
    os << "t_over_p,mean_hd,se_hd,mean_fd,se_fd";
    if (ub) os << ",mean_ub,se_ub";
    os << '\n';
    for (std::size_t k = 0; k < report.t_over_p.size(); ++k) {
        os << format_number(report.t_over_p[k]) << ',' << format_number(report.mean_rates_hd[k]) << ','
           << format_number(report.se_hd[k]) << ',' << format_number(report.mean_rates_fd[k]) << ','
           << format_number(report.se_fd[k]);
        if (ub) os << ',' << format_number(report.mean_rates_ub[k]) << ',' << format_number(report.se_ub[k]);
        os << '\n';
    }
}

void emit_csv(const SweepReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_csv(report, out);
    out.flush();
    if (!out) throw Error("failed writing '" + path + "'");
}

std::vector<double> CsvTable::column(const std::string& name) const {
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j] != name) continue;
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.push_back(r.at(j));
        return out;
    }
    throw InvalidInput("csv has no column '" + name + "'");
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

} // namespace

CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (t.comment.empty()) t.comment = line.size() > 2 ? line.substr(2) : std::string{};
            continue;
        }
        if (t.columns.empty()) {
            t.columns = split_commas(line);
            continue;
        }
        std::vector<double> row;
        for (const std::string& cell : split_commas(line)) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw InvalidInput("trailing characters");
            } catch (const std::exception&) {
                throw InvalidInput("csv: malformed number '" + cell + "'");
            }
        }
        if (row.size() != t.columns.size()) throw InvalidInput("csv: row width does not match header");
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_csv(in);
}

} // namespace fdrelay

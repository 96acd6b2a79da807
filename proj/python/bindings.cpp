// SPDX-License-Identifier: Apache-2.0

#include "fdrelay/cli.hpp"
#include "fdrelay/errors.hpp"
#include "fdrelay/montecarlo.hpp"
#include "fdrelay/rates.hpp"
#include "fdrelay/report.hpp"
#include "fdrelay/robust.hpp"
#include "fdrelay/waterfill.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace fdrelay;
using Vec = std::vector<double>;

PYBIND11_MODULE(_fdrelay, m) {
    m.doc() = "Robust full-duplex MIMO relay design";
    m.attr("__version__") = kVersion;
    m.attr("SEED_SCHEME") = kSeedScheme;

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidInput>(m, "InvalidInput", error.ptr());
    py::register_exception<NoFeasibleStreams>(m, "NoFeasibleStreams", error.ptr());
    py::register_exception<InvalidCovariance>(m, "InvalidCovariance", error.ptr());
    py::register_exception<UnsupportedSize>(m, "UnsupportedSize", error.ptr());
    py::register_exception<NoCrossing>(m, "NoCrossing", error.ptr());

    py::enum_<DuplexMode>(m, "DuplexMode")
        .value("half_duplex", DuplexMode::half_duplex)
        .value("full_duplex", DuplexMode::full_duplex);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def(py::init([](int m_src, int k_tx, int k_rx, int n_dst, double p_src, double p_relay, double t_bound,
                         DuplexMode mode, double entry_variance) {
                 SystemConfig c{m_src, k_tx, k_rx, n_dst, p_src, p_relay, t_bound, mode, entry_variance};
                 c.validate();
                 return c;
             }),
             py::kw_only(), py::arg("m_src") = 2, py::arg("k_tx") = 2, py::arg("k_rx") = 3, py::arg("n_dst") = 3,
             py::arg("p_src") = 5.0, py::arg("p_relay") = 5.0, py::arg("t_bound") = 0.0,
             py::arg("mode") = DuplexMode::full_duplex, py::arg("entry_variance") = 1.0)
        .def_readwrite("m_src", &SystemConfig::m_src)
        .def_readwrite("k_tx", &SystemConfig::k_tx)
        .def_readwrite("k_rx", &SystemConfig::k_rx)
        .def_readwrite("n_dst", &SystemConfig::n_dst)
        .def_readwrite("p_src", &SystemConfig::p_src)
        .def_readwrite("p_relay", &SystemConfig::p_relay)
        .def_readwrite("t_bound", &SystemConfig::t_bound)
        .def_readwrite("mode", &SystemConfig::mode)
        .def_readwrite("entry_variance", &SystemConfig::entry_variance)
        .def_property_readonly("dof_sr", &SystemConfig::dof_sr)
        .def_property_readonly("dof_rd", &SystemConfig::dof_rd)
        .def("validate", &SystemConfig::validate)
        .def("__repr__", [](const SystemConfig& c) { return "SystemConfig(" + c.describe() + ")"; });

    py::class_<RobustOptions>(m, "RobustOptions")
        .def(py::init([](double c, double outer_tol, double inner_tol, int max_outer, int max_inner) {
                 RobustOptions o{c, outer_tol, inner_tol, max_outer, max_inner};
                 o.validate();
                 return o;
             }),
             py::kw_only(), py::arg("shrink_c") = 0.95, py::arg("outer_tol") = 1e-4, py::arg("inner_tol") = 1e-6,
             py::arg("max_outer") = 200, py::arg("max_inner") = 500)
        .def_readwrite("shrink_c", &RobustOptions::shrink_c)
        .def_readwrite("outer_tol", &RobustOptions::outer_tol)
        .def_readwrite("inner_tol", &RobustOptions::inner_tol)
        .def_readwrite("max_outer", &RobustOptions::max_outer)
        .def_readwrite("max_inner", &RobustOptions::max_inner);

    py::class_<PowerAllocation>(m, "PowerAllocation")
        .def_readonly("powers", &PowerAllocation::powers)
        .def_readonly("water_level", &PowerAllocation::water_level)
        .def_readonly("budget", &PowerAllocation::budget)
        .def("total", &PowerAllocation::total);

    py::class_<RatePair>(m, "RatePair")
        .def_readonly("r_sr", &RatePair::r_sr)
        .def_readonly("r_rd", &RatePair::r_rd)
        .def_readonly("r_end2end", &RatePair::r_end2end);

    py::class_<HdDesign>(m, "HdDesign")
        .def_readonly("q_src", &HdDesign::q_src)
        .def_readonly("q_relay", &HdDesign::q_relay)
        .def_readonly("alloc_src", &HdDesign::alloc_src)
        .def_readonly("alloc_relay", &HdDesign::alloc_relay)
        .def_readonly("rate", &HdDesign::rate);

    py::class_<WorstCaseSolution>(m, "WorstCaseSolution")
        .def_readonly("sigr_sq", &WorstCaseSolution::sigr_sq)
        .def_readonly("water_level_si", &WorstCaseSolution::water_level_si)
        .def_readonly("gamma_s", &WorstCaseSolution::gamma_s)
        .def_readonly("effective_gains", &WorstCaseSolution::effective_gains)
        .def_readonly("rate_sr", &WorstCaseSolution::rate_sr)
        .def_readonly("converged", &WorstCaseSolution::converged)
        .def_readonly("iterations", &WorstCaseSolution::iterations)
        .def_readonly("grid_bound", &WorstCaseSolution::grid_bound);

    py::class_<OuterIterate>(m, "OuterIterate")
        .def_readonly("l", &OuterIterate::l)
        .def_readonly("relay_budget", &OuterIterate::relay_budget)
        .def_readonly("r_sr", &OuterIterate::r_sr)
        .def_readonly("r_rd", &OuterIterate::r_rd)
        .def_readonly("r", &OuterIterate::r)
        .def_readonly("inner_converged", &OuterIterate::inner_converged);

    py::class_<RobustDesignResult>(m, "RobustDesignResult")
        .def_readonly("gamma_s", &RobustDesignResult::gamma_s)
        .def_readonly("gamma_r", &RobustDesignResult::gamma_r)
        .def_readonly("sigr_sq", &RobustDesignResult::sigr_sq)
        .def_readonly("relay_budget_used", &RobustDesignResult::relay_budget_used)
        .def_readonly("rates", &RobustDesignResult::rates)
        .def_readonly("trace", &RobustDesignResult::trace)
        .def_readonly("best_index", &RobustDesignResult::best_index)
        .def_readonly("converged", &RobustDesignResult::converged)
        .def_readonly("alignment_not_worst_case", &RobustDesignResult::alignment_not_worst_case);

    py::class_<TrialRecord>(m, "TrialRecord")
        .def_readonly("trial_index", &TrialRecord::trial_index)
        .def_readonly("seed", &TrialRecord::seed)
        .def_readonly("r_hd", &TrialRecord::r_hd)
        .def_readonly("r_fd_worst", &TrialRecord::r_fd_worst);

    py::class_<SweepReport>(m, "SweepReport")
        .def_readonly("config", &SweepReport::config)
        .def_readonly("t_over_p", &SweepReport::t_over_p)
        .def_readonly("l_trials", &SweepReport::l_trials)
        .def_readonly("master_seed", &SweepReport::master_seed)
        .def_readonly("mean_rates_hd", &SweepReport::mean_rates_hd)
        .def_readonly("mean_rates_fd", &SweepReport::mean_rates_fd)
        .def_readonly("se_hd", &SweepReport::se_hd)
        .def_readonly("se_fd", &SweepReport::se_fd)
        .def_readonly("mean_rates_ub", &SweepReport::mean_rates_ub)
        .def_readonly("se_ub", &SweepReport::se_ub)
        .def("to_csv", [](const SweepReport& r) {
            std::ostringstream os;
            write_csv(r, os);
            return os.str();
        });

    py::class_<OracleInstance>(m, "OracleInstance")
        .def_readonly("seed", &OracleInstance::seed)
        .def_readonly("sig1_sq", &OracleInstance::sig1_sq)
        .def_readonly("gamma_r_bar", &OracleInstance::gamma_r_bar)
        .def_readonly("p_src", &OracleInstance::p_src)
        .def_readonly("t_bound", &OracleInstance::t_bound);

    m.def("svd", [](const ComplexMatrix& h) {
        SvdTriple s = svd(h);
        return py::make_tuple(s.left, s.singular_values, s.right);
    });
    m.def("channel_gains", &channel_gains);
    m.def("covariance_from_modes", [](const ComplexMatrix& basis, const Vec& p) { return covariance_from_modes(basis, p); });

    m.def("waterfill", [](const Vec& g, double budget, double tol) { return waterfill(g, budget, tol); },
          py::arg("gains"), py::arg("budget"), py::arg("tol") = kWaterfillTol);
    m.def("waterfill_rate", [](const Vec& g, const Vec& p) { return waterfill_rate(g, p); });

    m.def("logdet_rate", &logdet_rate);
    m.def("fd_sr_rate", &fd_sr_rate);
    m.def("fd_sr_rate_binomial", &fd_sr_rate_binomial);
    m.def("fd_rd_rate", &fd_rd_rate);
    m.def("scalar_fd_sr_rate", [](const Vec& s1, const Vec& gs, const Vec& gr, const Vec& sr) {
        return scalar_fd_sr_rate(s1, gs, gr, sr);
    });
    m.def("hd_optimal", &hd_optimal, py::arg("h1"), py::arg("h2"), py::arg("p_src"), py::arg("p_relay"));
    m.def("hd_rate_from_gains", [](const Vec& g1, const Vec& g2, double ps, double pr) {
        return hd_rate_from_gains(g1, g2, ps, pr);
    });

    m.def("worst_case_inner",
          [](const Vec& s1, int coupled, const Vec& gr, double ps, double t, double tol, int max_iter) {
              return worst_case_inner(s1, coupled, gr, ps, t, tol, max_iter);
          },
          py::arg("sig1_sq"), py::arg("coupled_count"), py::arg("gamma_r_bar"), py::arg("p_src"), py::arg("t_bound"),
          py::arg("tol") = 1e-6, py::arg("max_iter") = 500);
    m.def("brute_force_worst_case",
          [](const Vec& s1, const Vec& gr, double ps, double t, int grid) {
              return brute_force_worst_case(s1, gr, ps, t, grid);
          },
          py::arg("sig1_sq"), py::arg("gamma_r_bar"), py::arg("p_src"), py::arg("t_bound"), py::arg("grid_points"));
    m.def("robust_design", &robust_design, py::arg("h1"), py::arg("h2"), py::arg("cfg"),
          py::arg("opts") = RobustOptions{});
    m.def("robust_design_from_gains",
          [](const Vec& g1, const Vec& g2, const SystemConfig& cfg, const RobustOptions& o) {
              return robust_design_from_gains(g1, g2, cfg, o);
          },
          py::arg("sig1_sq"), py::arg("sig2_sq"), py::arg("cfg"), py::arg("opts") = RobustOptions{});
    m.def("known_rsi_design",
          [](const Vec& g1, const Vec& g2, const Vec& sr, const SystemConfig& cfg, const RobustOptions& o) {
              return known_rsi_design(g1, g2, sr, cfg, o);
          },
          py::arg("sig1_sq"), py::arg("sig2_sq"), py::arg("sigr_sq"), py::arg("cfg"),
          py::arg("opts") = RobustOptions{});
    m.def("coupled_stream_count", &coupled_stream_count);

    auto run_opts = [](int workers, const RobustOptions& o) {
        RunOptions r;
        r.workers = workers;
        r.robust = o;
        return r;
    };
    m.def("draw_channels", &draw_channels, py::arg("cfg"), py::arg("master_seed"), py::arg("index"));
    m.def("run_trials",
          [run_opts](const SystemConfig& cfg, int l, std::uint64_t seed, int workers, const RobustOptions& o) {
              return run_trials(cfg, l, seed, run_opts(workers, o));
          },
          py::arg("cfg"), py::arg("l_trials"), py::arg("master_seed"), py::arg("workers") = 1,
          py::arg("opts") = RobustOptions{}, py::call_guard<py::gil_scoped_release>());
    m.def("sweep_t",
          [run_opts](const SystemConfig& cfg, const Vec& tp, int l, std::uint64_t seed, int workers,
                     const RobustOptions& o, bool ub) { return sweep_t(cfg, tp, l, seed, run_opts(workers, o), ub); },
          py::arg("cfg"), py::arg("t_over_p"), py::arg("l_trials"), py::arg("master_seed"), py::arg("workers") = 1,
          py::arg("opts") = RobustOptions{}, py::arg("with_upper_bound") = false,
          py::call_guard<py::gil_scoped_release>());
    m.def("find_threshold",
          [run_opts](const SystemConfig& cfg, double lo, double hi, int l, std::uint64_t seed, double tol, int workers,
                     const RobustOptions& o) { return find_threshold(cfg, lo, hi, l, seed, tol, run_opts(workers, o)); },
          py::arg("cfg"), py::arg("t_lo"), py::arg("t_hi"), py::arg("l_trials"), py::arg("master_seed"),
          py::arg("tol") = 0.01, py::arg("workers") = 1, py::arg("opts") = RobustOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def("oracle_instance", &oracle_instance, py::arg("streams"), py::arg("master_seed"), py::arg("index"));

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = parse_and_dispatch(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leland/config.hpp"
#include "leland/presets.hpp"
#include "leland/simulate.hpp"

namespace py = pybind11;
using namespace leland;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Endogenous bankruptcy barriers for jump diffusions with "
              "phase-type upward jumps, under continuous and Poisson observation";

    py::class_<PhaseTypeDistribution>(m, "PhaseTypeDistribution")
        .def(py::init<Eigen::VectorXd, Eigen::MatrixXd>(), py::arg("alpha"), py::arg("T"))
        .def_property_readonly("order", &PhaseTypeDistribution::order)
        .def("mean", &PhaseTypeDistribution::mean)
        .def("laplace", py::overload_cast<double>(&PhaseTypeDistribution::laplace, py::const_));

    m.def("folded_normal_ph6", &folded_normal_ph6,
          "six-phase hyper-Erlang fit of |N(0,1)|");

    py::class_<LevyModel>(m, "LevyModel")
        .def(py::init<double, double, double, std::optional<PhaseTypeDistribution>>(),
             py::arg("sigma"), py::arg("drift_c"), py::arg("jump_rate") = 0.0,
             py::arg("jumps") = std::nullopt)
        .def_property_readonly("sigma", &LevyModel::sigma)
        .def_property_readonly("drift_c", &LevyModel::drift_c)
        .def_property_readonly("jump_rate", &LevyModel::jump_rate)
        .def("with_drift", &LevyModel::with_drift)
        .def("with_jump_rate", &LevyModel::with_jump_rate);

    m.def("laplace_exponent",
          py::overload_cast<const LevyModel&, double>(&laplace_exponent));
    m.def("phi_inverse", &phi_inverse);
    m.def("calibrate_drift", &calibrate_drift, py::arg("model"), py::arg("r"), py::arg("delta"));

    py::class_<ScaleFunctionRep>(m, "ScaleFunctionRep")
        .def_property_readonly("q", &ScaleFunctionRep::q)
        .def_property_readonly("phi_q", &ScaleFunctionRep::phi_q)
        .def("W", &ScaleFunctionRep::W)
        .def("W_bar", &ScaleFunctionRep::W_bar)
        .def("W_prime", &ScaleFunctionRep::W_prime)
        .def("Z", &ScaleFunctionRep::Z);
    m.def("build_scale_function", &build_scale_function);

    py::class_<FluctuationContext>(m, "FluctuationContext")
        .def(py::init<LevyModel>())
        .def("phi", &FluctuationContext::phi);
    m.def("gamma_fn", &gamma_fn);
    m.def("g_fn", &g_fn);
    m.def("J_fn", &J_fn);
    m.def("Lambda_fn", &Lambda_fn);
    m.def("Lambda_diag", &Lambda_diag);

    py::class_<MarketParams>(m, "MarketParams")
        .def(py::init<>())
        .def_readwrite("r", &MarketParams::r)
        .def_readwrite("delta", &MarketParams::delta)
        .def_readwrite("m", &MarketParams::m)
        .def_readwrite("rho", &MarketParams::rho)
        .def_readwrite("kappa", &MarketParams::kappa)
        .def_readwrite("eta", &MarketParams::eta)
        .def_readwrite("P", &MarketParams::P)
        .def_readwrite("V_T", &MarketParams::V_T)
        .def_readwrite("lam", &MarketParams::lambda);

    py::class_<ValuationResult>(m, "ValuationResult")
        .def_readonly("firm", &ValuationResult::firm)
        .def_readonly("debt", &ValuationResult::debt)
        .def_readonly("equity", &ValuationResult::equity);
    m.def("value_continuous", &value_continuous);
    m.def("value_periodic", &value_periodic);
    m.def("equity_at_barrier", &equity_at_barrier);

    py::enum_<BarrierRegime>(m, "BarrierRegime")
        .value("SmoothFitRoot", BarrierRegime::SmoothFitRoot)
        .value("ZeroBarrier", BarrierRegime::ZeroBarrier)
        .value("ContinuousFitRoot", BarrierRegime::ContinuousFitRoot);
    py::enum_<ObservationMode>(m, "ObservationMode")
        .value("Continuous", ObservationMode::Continuous)
        .value("Periodic", ObservationMode::Periodic);
    py::enum_<TaxThresholdRule>(m, "TaxThresholdRule")
        .value("Zero", TaxThresholdRule::Zero)
        .value("ProportionalToP", TaxThresholdRule::ProportionalToP);

    py::class_<BarrierSolution>(m, "BarrierSolution")
        .def_readonly("barrier", &BarrierSolution::barrier)
        .def_readonly("regime", &BarrierSolution::regime)
        .def_readonly("residual", &BarrierSolution::residual)
        .def_readonly("iterations", &BarrierSolution::iterations)
        .def_readonly("note", &BarrierSolution::note);
    m.def("solve_barrier_continuous", &solve_barrier_continuous);
    m.def("solve_barrier_periodic", &solve_barrier_periodic);

    py::class_<TwoStageSolution>(m, "TwoStageSolution")
        .def_readonly("P_star", &TwoStageSolution::P_star)
        .def_readonly("barrier", &TwoStageSolution::barrier)
        .def_readonly("firm_value", &TwoStageSolution::firm_value)
        .def_readonly("leverage", &TwoStageSolution::leverage)
        .def_readonly("non_unimodal_warning", &TwoStageSolution::non_unimodal_warning);
    m.def("two_stage", &two_stage);

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("paths", &SimConfig::paths)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("grid_step", &SimConfig::grid_step)
        .def_readwrite("horizon", &SimConfig::horizon)
        .def_readwrite("substeps", &SimConfig::substeps)
        .def_readwrite("tail_tol", &SimConfig::tail_tol);
    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("paths_used", &McEstimate::paths_used);
    m.def("mc_periodic_equity", &mc_periodic_equity,
          py::call_guard<py::gil_scoped_release>());
    m.def("mc_periodic_passage", &mc_periodic_passage,
          py::call_guard<py::gil_scoped_release>());
    m.def("mc_continuous_passage", &mc_continuous_passage,
          py::call_guard<py::gil_scoped_release>());

    py::class_<RunConfig>(m, "RunConfig")
        .def_static("parse", &RunConfig::parse)
        .def_static("load", &RunConfig::load)
        .def("serialize", &RunConfig::serialize)
        .def("build_model", &RunConfig::build_model, py::arg("force_raw_drift") = false)
        .def("build_market", &RunConfig::build_market);
}

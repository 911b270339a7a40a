#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "persistlab/critical_solver.hpp"
#include "persistlab/graphical.hpp"
#include "persistlab/simulator.hpp"
#include "persistlab/sweeps.hpp"

namespace py = pybind11;
using namespace persistlab;

namespace {

std::string fmt_rates(const Rates& r) {
    std::ostringstream out;
    out << "Rates(lam=" << r.lambda << ", a=" << r.a << ", b=" << r.b << ")";
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "two-state persistence model: closed forms, critical thresholds, "
              "exact simulation and the decimation coupling";

    py::register_exception<ValidationError>(m, "ValidationError",
                                            PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError",
                                           PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<Rates>(m, "Rates")
        .def(py::init([](double lam, double a, double b) {
                 return Rates{lam, a, b};
             }),
             py::arg("lam"), py::arg("a"), py::arg("b"))
        .def_readonly("lam", &Rates::lambda)
        .def_readonly("a", &Rates::a)
        .def_readonly("b", &Rates::b)
        .def("__repr__", &fmt_rates);

    py::class_<KillingSchedule>(m, "KillingSchedule")
        .def_static("deterministic", &KillingSchedule::deterministic,
                    py::arg("period"))
        .def_static("poisson", &KillingSchedule::poisson, py::arg("delta"))
        .def_property_readonly("kind",
                               [](const KillingSchedule& s) {
                                   return s.kind ==
                                                  KillingSchedule::Kind::
                                                      DeterministicPeriod
                                              ? "deterministic"
                                              : "poisson";
                               })
        .def_readonly("param", &KillingSchedule::param);

    py::class_<SpectralData>(m, "SpectralData")
        .def_readonly("disc", &SpectralData::disc)
        .def_readonly("sqrt_disc", &SpectralData::sqrt_disc)
        .def_readonly("nu1", &SpectralData::nu1)
        .def_readonly("nu2", &SpectralData::nu2)
        .def_readonly("c1", &SpectralData::c1)
        .def_readonly("c2", &SpectralData::c2);

    py::class_<QuadratureSettings>(m, "QuadratureSettings")
        .def(py::init([](int nodes, double tol, int refinements) {
                 return QuadratureSettings{nodes, tol, refinements};
             }),
             py::arg("node_count") = 64,
             py::arg("refinement_tolerance") = 1e-9,
             py::arg("max_refinements") = 9)
        .def_readwrite("node_count", &QuadratureSettings::node_count)
        .def_readwrite("refinement_tolerance",
                       &QuadratureSettings::refinement_tolerance)
        .def_readwrite("max_refinements", &QuadratureSettings::max_refinements);

    py::class_<CriticalResult>(m, "CriticalResult")
        .def_readonly("value", &CriticalResult::value)
        .def_readonly("bracket_lo", &CriticalResult::bracket_lo)
        .def_readonly("bracket_hi", &CriticalResult::bracket_hi)
        .def_readonly("residual", &CriticalResult::residual)
        .def_readonly("iterations", &CriticalResult::iterations)
        .def_readonly("multiple_sign_changes",
                      &CriticalResult::multiple_sign_changes);

    m.def("spectral", &spectral, py::arg("rates"));
    m.def("mean_persistent", &mean_persistent, py::arg("sd"), py::arg("t"));
    m.def("log_mean_persistent", &log_mean_persistent, py::arg("sd"),
          py::arg("t"));
    m.def("mean_normal", &mean_normal, py::arg("sd"), py::arg("t"));
    m.def("mean_persistent_deriv", &mean_persistent_deriv, py::arg("sd"),
          py::arg("t"), py::arg("order"));
    m.def(
        "envelope_bounds",
        [](const SpectralData& sd, double t) {
            const Envelope e = envelope_bounds(sd, t);
            return std::pair<double, double>{e.lower, e.upper};
        },
        py::arg("sd"), py::arg("t"));
    m.def("y_min_time", &y_min_time, py::arg("sd"));

    m.def("find_tc", &find_tc, py::arg("rates"), py::arg("tol") = 1e-10);
    m.def("tc_closed_form_balanced", &tc_closed_form_balanced, py::arg("rates"));
    m.def("m_prime", &m_prime, py::arg("rates"), py::arg("delta"),
          py::arg("quad") = QuadratureSettings{});
    m.def("delta_c_lower_bound", &delta_c_lower_bound, py::arg("rates"));
    m.def("find_delta_c", &find_delta_c, py::arg("rates"),
          py::arg("tol") = 1e-6, py::arg("quad") = QuadratureSettings{});
    m.def(
        "abs_log_mean",
        [](const Rates& r, double delta, const QuadratureSettings& q) {
            const AbsLogMean v = abs_log_mean(r, delta, q);
            return py::dict(py::arg("head") = v.head, py::arg("tail") = v.tail,
                            py::arg("total") = v.total);
        },
        py::arg("rates"), py::arg("delta"),
        py::arg("quad") = QuadratureSettings{});

    m.def(
        "killing_times",
        [](const KillingSchedule& s, double horizon, std::uint64_t seed,
           std::uint64_t replicate) {
            RngStream rng(Seed{seed}, replicate);
            return killing_times(s, horizon, rng);
        },
        py::arg("schedule"), py::arg("horizon"), py::arg("seed") = 0,
        py::arg("replicate") = 0);

    m.def(
        "sample_offspring",
        [](const Rates& r, double T, std::uint64_t seed, std::uint64_t replicate,
           std::int64_t cap) {
            RngStream rng(Seed{seed}, replicate);
            return sample_offspring(r, T, rng, SimLimits{cap});
        },
        py::arg("rates"), py::arg("t"), py::arg("seed") = 0,
        py::arg("replicate") = 0, py::arg("population_cap") = 100'000'000);

    py::class_<EpochTrace>(m, "EpochTrace")
        .def_readonly("z", &EpochTrace::z)
        .def_readonly("schedule_draws", &EpochTrace::schedule_draws)
        .def_readonly("capped", &EpochTrace::capped)
        .def_property_readonly("extinct_at", [](const EpochTrace& t) {
            return t.extinct_at ? py::cast(*t.extinct_at) : py::none().cast<py::object>();
        });

    m.def(
        "run_epochs",
        [](const Rates& r, const KillingSchedule& s, std::int64_t init_n2,
           int max_epochs, std::uint64_t seed, std::uint64_t replicate,
           std::int64_t cap) {
            RngStream rng(Seed{seed}, replicate);
            return run_epochs(r, s, init_n2, max_epochs, rng, SimLimits{cap});
        },
        py::arg("rates"), py::arg("schedule"), py::arg("init_n2") = 1,
        py::arg("max_epochs") = 100, py::arg("seed") = 0,
        py::arg("replicate") = 0, py::arg("population_cap") = 100'000'000);

    py::class_<MeanEstimate>(m, "MeanEstimate")
        .def_readonly("mean", &MeanEstimate::mean)
        .def_readonly("std_error", &MeanEstimate::std_error)
        .def_readonly("reps", &MeanEstimate::reps);

    m.def(
        "estimate_mean_offspring",
        [](const Rates& r, double T, std::int64_t reps, std::uint64_t seed,
           std::int64_t cap, int threads) {
            return estimate_mean_offspring(r, T, reps, Seed{seed},
                                           SimLimits{cap}, threads);
        },
        py::arg("rates"), py::arg("t"), py::arg("reps"), py::arg("seed") = 0,
        py::arg("population_cap") = 100'000'000, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

    py::class_<SurvivalEstimate>(m, "SurvivalEstimate")
        .def_readonly("p_hat", &SurvivalEstimate::p_hat)
        .def_readonly("std_error", &SurvivalEstimate::std_error)
        .def_readonly("ci_lo", &SurvivalEstimate::ci_lo)
        .def_readonly("ci_hi", &SurvivalEstimate::ci_hi)
        .def_readonly("reps", &SurvivalEstimate::reps)
        .def_readonly("epochs", &SurvivalEstimate::epochs)
        .def_readonly("survivors", &SurvivalEstimate::survivors)
        .def_readonly("capped_reps", &SurvivalEstimate::capped_reps)
        .def_property_readonly_static(
            "alive_definition",
            [](const py::object&) { return SurvivalEstimate::alive_definition; });

    m.def(
        "estimate_survival",
        [](const Rates& r, const KillingSchedule& s, std::int64_t reps,
           int max_epochs, std::uint64_t seed, std::int64_t cap, int threads) {
            return estimate_survival(r, s, reps, max_epochs, Seed{seed},
                                     SimLimits{cap}, threads);
        },
        py::arg("rates"), py::arg("schedule"), py::arg("reps"),
        py::arg("max_epochs"), py::arg("seed") = 0,
        py::arg("population_cap") = 100'000'000, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "decimate",
        [](const std::vector<double>& points, double keep_prob,
           std::uint64_t seed, std::uint64_t replicate) {
            RngStream rng(Seed{seed}, replicate);
            return decimate(points, keep_prob, rng);
        },
        py::arg("points"), py::arg("keep_prob"), py::arg("seed") = 0,
        py::arg("replicate") = 0);

    py::class_<CoupledOutcome>(m, "CoupledOutcome")
        .def_readonly("alive_low", &CoupledOutcome::alive_low)
        .def_readonly("alive_high", &CoupledOutcome::alive_high)
        .def_readonly("containment_ok", &CoupledOutcome::containment_ok)
        .def_readonly("segments_checked", &CoupledOutcome::segments_checked)
        .def_readonly("violations", &CoupledOutcome::violations)
        .def_readonly("discarded", &CoupledOutcome::discarded);

    m.def(
        "coupled_run",
        [](const Rates& r, double delta, double delta_high, double horizon,
           std::uint64_t seed, std::uint64_t replicate, std::int64_t budget) {
            RngStream rng(Seed{seed}, replicate);
            return coupled_run(r, delta, delta_high, horizon, rng,
                               CouplingLimits{budget});
        },
        py::arg("rates"), py::arg("delta"), py::arg("delta_high"),
        py::arg("horizon"), py::arg("seed") = 0, py::arg("replicate") = 0,
        py::arg("node_budget") = 10'000'000);

    py::class_<CouplingSummary>(m, "CouplingSummary")
        .def_readonly("reps", &CouplingSummary::reps)
        .def_readonly("used", &CouplingSummary::used)
        .def_readonly("discarded", &CouplingSummary::discarded)
        .def_readonly("alive_low", &CouplingSummary::alive_low)
        .def_readonly("alive_high", &CouplingSummary::alive_high)
        .def_readonly("violations", &CouplingSummary::violations)
        .def_readonly("p_low", &CouplingSummary::p_low)
        .def_readonly("p_high", &CouplingSummary::p_high);

    m.def(
        "coupling_check",
        [](const Rates& r, double delta, double delta_high, double horizon,
           std::int64_t reps, std::uint64_t seed, std::int64_t budget,
           int threads) {
            return coupling_check(r, delta, delta_high, horizon, reps,
                                  Seed{seed}, budget, threads);
        },
        py::arg("rates"), py::arg("delta"), py::arg("delta_high"),
        py::arg("horizon"), py::arg("reps"), py::arg("seed") = 0,
        py::arg("node_budget") = 10'000'000, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

    m.attr("__version__") = "0.1.0";
}

// Python bindings for the tlinedce core: circuit/drive descriptions, static
// spectra, quantized mode tables, driven evolution through both routes,
// spectrum sweeps, and the structural verification suite.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "tlinedce/circuit.hpp"
#include "tlinedce/config.hpp"
#include "tlinedce/dynamics.hpp"
#include "tlinedce/lattice.hpp"
#include "tlinedce/observables.hpp"
#include "tlinedce/quantization.hpp"
#include "tlinedce/verify.hpp"

namespace py = pybind11;
using namespace tlinedce;

namespace {

EvolveMethod method_from_string(const std::string& name) {
    if (name == "analytic" || name == "analytic-multiscale")
        return EvolveMethod::AnalyticMultiscale;
    if (name == "numeric" || name == "numeric-ode")
        return EvolveMethod::NumericOde;
    throw std::invalid_argument("method: expected 'analytic' or 'numeric', got '" +
                                name + "'");
}

IntegrateOptions make_integrate_options(double rtol, double atol) {
    IntegrateOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "particle creation in modulated superconducting transmission-line "
        "lattices";
    m.attr("__version__") = "0.1.0";

    py::enum_<CircuitFamily>(m, "CircuitFamily")
        .value("LHTL1", CircuitFamily::LHTL1)
        .value("LHTL2", CircuitFamily::LHTL2)
        .value("RHTL1", CircuitFamily::RHTL1)
        .value("RHTL2", CircuitFamily::RHTL2);

    py::enum_<RampKind>(m, "RampKind")
        .value("Hard", RampKind::Hard)
        .value("Cosine", RampKind::Cosine);

    py::class_<CircuitSpec>(m, "CircuitSpec",
                            "lattice description; defaults reproduce the "
                            "reference parameter set")
        .def(py::init<>())
        .def_readwrite("family", &CircuitSpec::family)
        .def_readwrite("n_cells", &CircuitSpec::n_cells)
        .def_readwrite("dx", &CircuitSpec::dx)
        .def_readwrite("C", &CircuitSpec::C)
        .def_readwrite("C_J", &CircuitSpec::C_J)
        .def_readwrite("L", &CircuitSpec::L)
        .def_readwrite("I_c", &CircuitSpec::I_c)
        .def("__repr__", [](const CircuitSpec& spec) {
            return std::string("CircuitSpec(") + family_name(spec.family) +
                   ", N=" + std::to_string(spec.n_cells) + ")";
        });

    py::class_<DriveSpec>(m, "DriveSpec",
                          "parametric Josephson-energy modulation")
        .def(py::init<>())
        .def_readwrite("eta", &DriveSpec::eta)
        .def_readwrite("Omega", &DriveSpec::Omega)
        .def_readwrite("t_f", &DriveSpec::t_f)
        .def_readwrite("ramp", &DriveSpec::ramp)
        .def_readwrite("ramp_window", &DriveSpec::ramp_window);

    m.def("family_name", &family_name, py::arg("family"));
    m.def("family_from_name", &family_from_name, py::arg("name"));
    m.def("validate_circuit", &validate_circuit, py::arg("spec"));
    m.def("circuit_warnings", &circuit_warnings, py::arg("spec"));
    m.def("josephson_E0", &josephson_E0, py::arg("spec"));
    m.def("tilde_E0", &tilde_E0, py::arg("spec"),
          "scaled Josephson energy (2 pi/phi0)^2 E0 [1/H]");
    m.def("wave_vector", &wave_vector, py::arg("spec"), py::arg("j"));
    m.def(
        "dispersion0",
        [](const CircuitSpec& spec, int j) { return dispersion0(spec, j); },
        py::arg("spec"), py::arg("j"),
        "mode frequency omega_j at the static working point [rad/s]");
    m.def("chi_factor", &chi_factor, py::arg("spec"), py::arg("j"));
    m.def(
        "eigenenergy",
        [](const CircuitSpec& spec, int j) {
            return eigenenergy(spec, j, josephson_E0(spec));
        },
        py::arg("spec"), py::arg("j"),
        "single-quantum eigenenergy eps_j at E0 [J]");

    py::class_<InfraredLimit>(m, "InfraredLimit")
        .def_readonly("exact", &InfraredLimit::exact)
        .def_readonly("approx", &InfraredLimit::approx);
    m.def("infrared_limit", &infrared_limit, py::arg("spec"),
          "LHTL1 band-edge saturation frequency: exact and 4C >> C_J forms");

    py::class_<ModeRow>(m, "ModeRow")
        .def_readonly("j", &ModeRow::j)
        .def_readonly("k", &ModeRow::k)
        .def_readonly("omega0", &ModeRow::omega0)
        .def_readonly("chi", &ModeRow::chi)
        .def_readonly("epsilon", &ModeRow::epsilon)
        .def_readonly("amp_norm", &ModeRow::amp_norm);

    py::class_<ModeSet>(m, "ModeSet",
                        "quantized mode table, rows ordered -N/2..-1, 1..N/2")
        .def(py::init<const CircuitSpec&>(), py::arg("spec"))
        .def("rows", &ModeSet::rows, py::return_value_policy::copy)
        .def("row", &ModeSet::row, py::arg("j"),
             py::return_value_policy::copy)
        .def("__len__", &ModeSet::size);
    m.def(
        "normalization_check",
        [](const ModeSet& modes, int i, int j) {
            return normalization_check(modes, i, j);
        },
        py::arg("modes"), py::arg("i"), py::arg("j"),
        "Klein-Gordon inner product of modes i and j (mod-N delta)");
    m.def(
        "commutator_entry",
        [](const ModeSet& modes, int j, int h) {
            return commutator_entry(modes, j, h);
        },
        py::arg("modes"), py::arg("j"), py::arg("h"),
        "[a_j, a_h^dag] from canonical node commutators (chi_j^-1 mod-N delta)");

    py::class_<ParticleNumber>(m, "ParticleNumber")
        .def_readonly("n", &ParticleNumber::n)
        .def_readonly("log10_n", &ParticleNumber::log10_n);
    m.def("particle_number_analytic", &particle_number_analytic,
          py::arg("spec"), py::arg("mode"), py::arg("tau"),
          "closed-form N = sinh^2 of the growth argument at slow time tau");
    m.def(
        "particle_number_numeric",
        [](const CircuitSpec& spec, const DriveSpec& drive, int mode,
           double rtol, double atol) {
            return particle_number_numeric(spec, drive, mode,
                                           make_integrate_options(rtol, atol));
        },
        py::arg("spec"), py::arg("drive"), py::arg("mode"),
        py::arg("rtol") = 1e-10, py::arg("atol") = 1e-12);
    m.def("mode_energy", &mode_energy, py::arg("spec"), py::arg("mode"),
          py::arg("N"), "energy released into the mode: eps_j * N [J]");

    py::class_<BogoliubovResult>(m, "BogoliubovResult")
        .def_readonly("mode", &BogoliubovResult::mode)
        .def_readonly("alpha", &BogoliubovResult::alpha)
        .def_readonly("beta", &BogoliubovResult::beta)
        .def_readonly("tau", &BogoliubovResult::tau)
        .def_readonly("resonant", &BogoliubovResult::resonant)
        .def_property_readonly(
            "method",
            [](const BogoliubovResult& res) { return method_name(res.method); })
        .def("particle_number", &BogoliubovResult::particle_number)
        .def("unitarity", &BogoliubovResult::unitarity)
        .def("__repr__", [](const BogoliubovResult& res) {
            return "BogoliubovResult(mode=" + std::to_string(res.mode) +
                   ", N=" + std::to_string(res.particle_number()) + ")";
        });

    m.def(
        "evolve_analytic",
        [](const CircuitSpec& spec, const DriveSpec& drive, int mode) {
            return evolve_analytic(spec, drive, mode);
        },
        py::arg("spec"), py::arg("drive"), py::arg("mode"),
        "multiscale closed-form Bogoliubov transform at tau = eta * t_f");
    m.def(
        "evolve_numeric",
        [](const CircuitSpec& spec, const DriveSpec& drive, int mode,
           double rtol, double atol) {
            return evolve_numeric(spec, drive, mode,
                                  make_integrate_options(rtol, atol));
        },
        py::arg("spec"), py::arg("drive"), py::arg("mode"),
        py::arg("rtol") = 1e-10, py::arg("atol") = 1e-12,
        "adaptive integration of the exact mode equation (the oracle)");
    m.def("multiscale_growth_rate", &multiscale_growth_rate, py::arg("spec"),
          py::arg("omega0"));

    py::class_<ModeTrajectory>(m, "ModeTrajectory")
        .def_readonly("mode", &ModeTrajectory::mode)
        .def_readonly("omega0", &ModeTrajectory::omega0)
        .def_readonly("t", &ModeTrajectory::t)
        .def_readonly("Q", &ModeTrajectory::Q)
        .def_readonly("Qdot", &ModeTrajectory::Qdot)
        .def_readonly("wronskian_drift", &ModeTrajectory::wronskian_drift)
        .def_readonly("max_wronskian_drift",
                      &ModeTrajectory::max_wronskian_drift);
    m.def(
        "integrate_mode",
        [](const CircuitSpec& spec, const DriveSpec& drive, int mode,
           double rtol, double atol, int max_samples) {
            IntegrateOptions opt = make_integrate_options(rtol, atol);
            opt.max_samples = max_samples;
            return integrate_mode(spec, drive, mode, opt);
        },
        py::arg("spec"), py::arg("drive"), py::arg("mode"),
        py::arg("rtol") = 1e-10, py::arg("atol") = 1e-12,
        py::arg("max_samples") = 2001);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("j", &SweepRow::j)
        .def_readonly("omega0", &SweepRow::omega0)
        .def_readonly("epsilon_over_hbar", &SweepRow::epsilon_over_hbar)
        .def_readonly("Omega", &SweepRow::Omega)
        .def_readonly("N", &SweepRow::N)
        .def_readonly("log10_N", &SweepRow::log10_N)
        .def_readonly("E_over_hbar", &SweepRow::E_over_hbar);
    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("tau", &SweepResult::tau)
        .def_readonly("eta", &SweepResult::eta)
        .def_readonly("rows", &SweepResult::rows)
        .def_property_readonly(
            "family",
            [](const SweepResult& sweep) { return family_name(sweep.family); })
        .def_property_readonly(
            "trend_N",
            [](const SweepResult& sweep) {
                return monotonicity_name(sweep.trend_N);
            })
        .def_property_readonly("trend_E", [](const SweepResult& sweep) {
            return monotonicity_name(sweep.trend_E);
        });
    m.def(
        "sweep_spectrum",
        [](const CircuitSpec& spec, double tau, double eta,
           const std::string& method, double rtol, double atol, int max_modes,
           int threads) {
            SweepOptions opt;
            opt.tau = tau;
            opt.eta = eta;
            opt.method = method_from_string(method);
            opt.rtol = rtol;
            opt.atol = atol;
            opt.max_modes = max_modes;
            opt.threads = threads;
            return sweep_spectrum(spec, opt);
        },
        py::arg("spec"), py::arg("tau") = 1e-12, py::arg("eta") = 0.01,
        py::arg("method") = "analytic", py::arg("rtol") = 1e-10,
        py::arg("atol") = 1e-12, py::arg("max_modes") = 0,
        py::arg("threads") = 0,
        "drive every positive-branch mode at its own resonance and tabulate "
        "N_j and E_j");

    py::class_<DispersionRow>(m, "DispersionRow")
        .def_readonly("j", &DispersionRow::j)
        .def_readonly("k_dx", &DispersionRow::k_dx)
        .def_readonly("omega0", &DispersionRow::omega0)
        .def_readonly("epsilon_over_hbar", &DispersionRow::epsilon_over_hbar);
    py::class_<DispersionTable>(m, "DispersionTable")
        .def_readonly("rows", &DispersionTable::rows)
        .def_property_readonly("family", [](const DispersionTable& table) {
            return family_name(table.family);
        });
    m.def(
        "dispersion_table",
        [](const CircuitSpec& spec) { return dispersion_table(spec); },
        py::arg("spec"));

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("pass_", &CheckResult::pass)
        .def_readonly("residual", &CheckResult::residual)
        .def_readonly("detail", &CheckResult::detail)
        .def("__repr__", [](const CheckResult& check) {
            return std::string(check.pass ? "[PASS] " : "[FAIL] ") + check.name;
        });
    m.def(
        "run_verification",
        [](const CircuitSpec& base, double rtol, double atol) {
            VerifyOptions opt;
            opt.rtol = rtol;
            opt.atol = atol;
            return run_verification(base, opt);
        },
        py::arg("spec") = CircuitSpec{}, py::arg("rtol") = 1e-10,
        py::arg("atol") = 1e-12,
        "structural self-checks across all four families");
}

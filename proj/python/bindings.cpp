// Python bindings for the main operations. Matrices come back as complex
// numpy arrays; spectra and sweeps as dicts of arrays.

#include <vatom/cli.hpp>
#include <vatom/dressed.hpp>
#include <vatom/error.hpp>
#include <vatom/model.hpp>
#include <vatom/spectra.hpp>
#include <vatom/steady.hpp>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace vatom;

namespace {

py::dict series_dict(const SpectrumSeries& s)
{
    py::dict d;
    d["freqs"] = s.freqs;
    d["values"] = s.values;
    d["kind"] = std::string(to_string(s.kind));
    d["min_relative"] = s.min_relative;
    return d;
}

py::dict rates_dict(const TransitionRates& r)
{
    py::dict d;
    d["ab"] = r.ab;
    d["ba"] = r.ba;
    d["ac"] = r.ac;
    d["ca"] = r.ca;
    d["bc"] = r.bc;
    d["cb"] = r.cb;
    d["advisory"] = r.advisory;
    return d;
}

TransitionRates rates_from(const py::dict& d)
{
    TransitionRates r;
    r.ab = d["ab"].cast<double>();
    r.ba = d["ba"].cast<double>();
    r.ac = d["ac"].cast<double>();
    r.ca = d["ca"].cast<double>();
    r.bc = d["bc"].cast<double>();
    r.cb = d["cb"].cast<double>();
    return r;
}

py::dict populations_dict(const DressedPopulations& p)
{
    py::dict d;
    d["aa"] = p.aa;
    d["bb"] = p.bb;
    d["cc"] = p.cc;
    return d;
}

ModelOptions model_options(BetaVariant variant) { return {variant, SOperatorSource::ClosedForm}; }

}  // namespace

PYBIND11_MODULE(_vatom, m)
{
    m.doc() = "V-type three-level atom in a bad cavity";

    // Held for the lifetime of the interpreter; the module keeps its own reference.
    static PyObject* error_type = PyErr_NewException("vatom._vatom.VatomError", PyExc_RuntimeError, nullptr);
    m.attr("VatomError") = py::handle(error_type);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::handle(error_type)(e.what());
            exc.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type, exc.ptr());
        }
    });

    py::enum_<BetaVariant>(m, "BetaVariant")
        .value("Corrected", BetaVariant::Corrected)
        .value("PaperExact", BetaVariant::PaperExact);
    py::enum_<SecularVariant>(m, "SecularVariant")
        .value("Corrected", SecularVariant::Corrected)
        .value("PaperExact", SecularVariant::PaperExact);
    py::enum_<SweepVariable>(m, "SweepVariable")
        .value("Delta", SweepVariable::Delta)
        .value("Rabi", SweepVariable::Rabi)
        .value("Omega21", SweepVariable::Omega21);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init([](double gamma, double g, double kappa, double omega21, double rabi, double delta) {
                 SystemParams p;
                 p.gamma = gamma;
                 p.g = g;
                 p.kappa = kappa;
                 p.omega21 = omega21;
                 p.rabi = rabi;
                 p.delta = delta;
                 return p;
             }),
             py::arg("gamma") = 1.0, py::arg("g") = 20.0, py::arg("kappa") = 100.0, py::arg("omega21") = 10.0,
             py::arg("rabi") = 10.0, py::arg("delta") = 0.0)
        .def_readwrite("gamma", &SystemParams::gamma)
        .def_readwrite("g", &SystemParams::g)
        .def_readwrite("kappa", &SystemParams::kappa)
        .def_readwrite("omega21", &SystemParams::omega21)
        .def_readwrite("rabi", &SystemParams::rabi)
        .def_readwrite("delta", &SystemParams::delta)
        .def_property_readonly("gamma_c", &SystemParams::gamma_c)
        .def_property_readonly("omega_r", [](const SystemParams& p) { return dressed_scalars(p).omega_r; })
        .def("validate", &SystemParams::validate)
        .def("__repr__", [](const SystemParams& p) {
            return "SystemParams(gamma=" + std::to_string(p.gamma) + ", g=" + std::to_string(p.g) +
                   ", kappa=" + std::to_string(p.kappa) + ", omega21=" + std::to_string(p.omega21) +
                   ", rabi=" + std::to_string(p.rabi) + ", delta=" + std::to_string(p.delta) + ")";
        });

    m.def("dressed_scalars", [](const SystemParams& p) {
        const DressedScalars s = dressed_scalars(p);
        return py::make_tuple(s.omega_r, s.eta, s.epsilon);
    }, "(omega_r, eta, epsilon)");

    m.def("s_operator", [](const SystemParams& p, BetaVariant v) { return Eigen::MatrixXcd(build_S_closed(beta_closed_form(p, v))); },
          py::arg("params"), py::arg("variant") = BetaVariant::Corrected);
    m.def("s_operator_oracle", [](const SystemParams& p) { return Eigen::MatrixXcd(build_S_oracle(p)); });

    m.def("reduced_liouvillian",
          [](const SystemParams& p, BetaVariant v) { return build_reduced_liouvillian(p, model_options(v)).matrix; },
          py::arg("params"), py::arg("variant") = BetaVariant::Corrected,
          "9x9 generator on row-major vectorised density matrices");
    m.def("full_liouvillian", [](const SystemParams& p, int n_max) { return build_full_liouvillian(p, n_max).matrix; });

    m.def("steady_state",
          [](const SystemParams& p, BetaVariant v) {
              return Eigen::MatrixXcd(steady_state(build_reduced_liouvillian(p, model_options(v))).rho);
          },
          py::arg("params"), py::arg("variant") = BetaVariant::Corrected);
    m.def("steady_state_full", [](const SystemParams& p, int n_max) {
        return Eigen::MatrixXcd(atomic_marginal(steady_state_full(build_full_liouvillian(p, n_max)).rho, n_max));
    }, "atomic marginal of the atom + cavity steady state");

    m.def("sweep_populations",
          [](const SystemParams& p, const std::vector<double>& grid, SweepVariable var, BetaVariant v, unsigned threads) {
              const PopulationSweep s = sweep_populations(p, grid, var, model_options(v), threads);
              py::dict d;
              d["grid"] = s.grid;
              d["rho00"] = s.rho00;
              d["rho11"] = s.rho11;
              d["rho22"] = s.rho22;
              d["rho10"] = s.rho10;
              d["rho20"] = s.rho20;
              d["rho21"] = s.rho21;
              d["residual"] = s.residual;
              py::list failures;
              for (const auto& f : s.failures)
                  failures.append(py::make_tuple(f.index, f.value, f.message));
              d["failures"] = failures;
              return d;
          },
          py::arg("params"), py::arg("grid"), py::arg("variable") = SweepVariable::Delta,
          py::arg("variant") = BetaVariant::Corrected, py::arg("threads") = 0u);

    m.def("dressed_basis", [](const SystemParams& p) {
        const DressedBasis b = dressed_basis(p);
        return py::make_tuple(Eigen::MatrixXcd(b.vectors), b.eigenvalues);
    }, "(columns |a>, |b>, |c>; eigenvalues)");
    m.def("transition_rates", [](const SystemParams& p) { return rates_dict(transition_rates(p)); });
    m.def("dressed_populations_rate_eq",
          [](const py::dict& rates) { return populations_dict(dressed_populations_rate_eq(rates_from(rates))); });
    m.def("dressed_populations_exact", [](const SystemParams& p) {
        return populations_dict(dressed_populations_exact(steady_state(build_reduced_liouvillian(p)), dressed_basis(p)));
    });
    m.def("secular_rates",
          [](const SystemParams& p, SecularVariant v) {
              const SecularRates s = secular_rates(p, v);
              py::dict d;
              d["gamma_1a"] = s.gamma_1a;
              d["gamma_1b"] = s.gamma_1b;
              d["gamma_2a"] = s.gamma_2a;
              d["gamma_2b"] = s.gamma_2b;
              d["gamma_3a"] = s.gamma_3a;
              d["gamma_3b"] = s.gamma_3b;
              d["gamma_4"] = s.gamma_4;
              d["gamma_5"] = s.gamma_5;
              d["omega_3"] = s.omega_3;
              d["omega_4"] = s.omega_4;
              d["omega_5"] = s.omega_5;
              return d;
          },
          py::arg("params"), py::arg("variant") = SecularVariant::Corrected);

    m.def("default_spectral_grid", &default_spectral_grid);
    m.def("fluorescence",
          [](const SystemParams& p, const std::vector<double>& grid, unsigned threads) {
              SpectrumOptions o;
              o.threads = threads;
              return series_dict(fluorescence_qrt(p, grid, o));
          },
          py::arg("params"), py::arg("grid"), py::arg("threads") = 0u);
    m.def("fluorescence_oracle",
          [](const SystemParams& p, const std::vector<double>& grid, unsigned threads) {
              FourierOracleOptions o;
              o.threads = threads;
              return series_dict(fluorescence_fourier_oracle(p, grid, o).spectrum);
          },
          py::arg("params"), py::arg("grid"), py::arg("threads") = 0u);
    m.def("fluorescence_secular",
          [](const SystemParams& p, const std::vector<double>& grid, SecularVariant v) {
              const SecularComponents c = fluorescence_secular(p, grid, v);
              py::dict d = series_dict(c.total);
              d["central"] = c.central.values;
              d["inner_low"] = c.inner_low.values;
              d["inner_high"] = c.inner_high.values;
              d["outer_low"] = c.outer_low.values;
              d["outer_high"] = c.outer_high.values;
              d["advisory"] = c.advisory;
              return d;
          },
          py::arg("params"), py::arg("grid"), py::arg("variant") = SecularVariant::Corrected);
    m.def("absorption",
          [](const SystemParams& p, const std::vector<double>& grid, unsigned threads) {
              AbsorptionOptions o;
              o.threads = threads;
              return series_dict(absorption_spectrum(p, grid, o));
          },
          py::arg("params"), py::arg("grid"), py::arg("threads") = 0u);
    m.def("stationary_correlation",
          [](const SystemParams& p) { return stationary_correlation(steady_state(build_reduced_liouvillian(p))); });
    m.def("line_weights", [](const SystemParams& p) {
        const LineWeights w = line_weights(p);
        py::dict d;
        d["-2"] = w.w_minus2;
        d["-1"] = w.w_minus1;
        d["+1"] = w.w_plus1;
        d["+2"] = w.w_plus2;
        return d;
    });

    m.def("validate",
          [](bool full, BetaVariant v, unsigned threads) {
              py::list out;
              for (const auto& c : cli::run_validation(full ? cli::ValidateLevel::Full : cli::ValidateLevel::Fast, v, threads))
                  out.append(py::make_tuple(c.name, c.measured, c.bound, c.pass));
              return out;
          },
          py::arg("full") = false, py::arg("variant") = BetaVariant::Corrected, py::arg("threads") = 0u,
          "list of (name, measured, bound, passed)");
}

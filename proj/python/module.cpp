// pybind11 bindings for the fsistab core.

#include "fsistab/analyze.hpp"
#include "fsistab/config.hpp"
#include "fsistab/elliptic.hpp"
#include "fsistab/evolve.hpp"
#include "fsistab/runner.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fsistab;

PYBIND11_MODULE(pyfsistab, m) {
  m.doc() = "flow-structure interaction stability experiments (C++ core)";

  py::class_<Geometry>(m, "Geometry")
      .def(py::init<double, double, int, int>(), py::arg("L1"), py::arg("L2"),
           py::arg("nx"), py::arg("ny"))
      .def_readonly("L1", &Geometry::L1)
      .def_readonly("L2", &Geometry::L2)
      .def_readonly("nx", &Geometry::nx)
      .def_readonly("ny", &Geometry::ny)
      .def_readonly("hx", &Geometry::hx)
      .def_readonly("hy", &Geometry::hy);

  py::class_<Grid>(m, "Grid")
      .def(py::init<const Geometry&>())
      .def_readonly("N", &Grid::N)
      .def_readonly("nb", &Grid::nb)
      .def_readonly("Wo", &Grid::Wo)
      .def_readonly("Wb", &Grid::Wb)
      .def_readonly("x", &Grid::x)
      .def_readonly("y", &Grid::y);

  py::enum_<AmbientPreset>(m, "AmbientPreset")
      .value("zero", AmbientPreset::Zero)
      .value("solenoidal_vortex", AmbientPreset::SolenoidalVortex)
      .value("small_div", AmbientPreset::SmallDiv);

  py::class_<AmbientField>(m, "AmbientField")
      .def_readonly("amplitude", &AmbientField::amplitude)
      .def_readonly("U1", &AmbientField::U1)
      .def_readonly("U2", &AmbientField::U2)
      .def_readonly("psiU", &AmbientField::psiU);

  m.def("build_ambient", &build_ambient, py::arg("grid"), py::arg("preset"),
        py::arg("amplitude"));
  m.def("check_cc", [](const Grid& g, const AmbientField& U) {
    auto r = check_cc(g, U);
    return py::make_tuple(r.max_defect, r.pass);
  });

  py::class_<Coeffs>(m, "Coeffs")
      .def(py::init([](double nu, double lam, double eta) {
             return Coeffs{nu, lam, eta};
           }),
           py::arg("nu") = 1.0, py::arg("lambda") = 1.0, py::arg("eta") = 1.0)
      .def_readwrite("nu", &Coeffs::nu)
      .def_readwrite("lambda_", &Coeffs::lambda)
      .def_readwrite("eta", &Coeffs::eta);

  py::class_<Fields>(m, "Fields")
      .def_readonly("p", &Fields::p)
      .def_readonly("u1", &Fields::u1)
      .def_readonly("u2", &Fields::u2)
      .def_readonly("w", &Fields::w)
      .def_readonly("v", &Fields::v);

  py::class_<Generator>(m, "Generator")
      .def(py::init<const Grid&, const AmbientField&, int, Coeffs>(),
           py::arg("grid"), py::arg("ambient"), py::arg("kappa"),
           py::arg("coeffs") = Coeffs{},
           py::keep_alive<1, 2>(), py::keep_alive<1, 3>())
      .def_property_readonly("dim", &Generator::dim)
      .def("M", [](const Generator& A) { return Eigen::MatrixXd(A.M()); })
      .def("G", [](const Generator& A) { return Eigen::MatrixXd(A.G()); })
      .def("apply", &Generator::apply)
      .def("fields", &Generator::fields)
      .def("energy", &Generator::energy)
      .def("hnorm2", &Generator::hnorm2)
      .def("hdot", &Generator::hdot)
      .def("diss", &Generator::diss)
      .def("sdiv_rate", &Generator::sdiv_rate)
      .def("skappa_rate", &Generator::skappa_rate,
           py::arg("X"), py::arg("include_interface_term") = true)
      .def("Q", &Generator::Q)
      .def("null_vector", &Generator::null_vector)
      .def("null_residual", &Generator::null_residual)
      .def("project_offnull", &Generator::project_offnull)
      .def("random_state", &Generator::random_state, py::arg("seed"),
           py::arg("normalize") = true)
      .def("smooth_state", &Generator::smooth_state);

  py::class_<Elliptic>(m, "Elliptic")
      .def(py::init<const Grid&>(), py::keep_alive<1, 2>())
      .def("neumann",
           [](const Elliptic& e, const Vec& f, const Vec& g) {
             return e.neumann({f, g});
           })
      .def("leray", [](const Elliptic& e, const Vec& u1, const Vec& u2) {
        auto r = e.leray(u1, u2);
        return py::make_tuple(r.Pu1, r.Pu2, r.q);
      });
  m.def("beam_biharmonic_solve", &beam_biharmonic_solve);

  py::class_<EnergyTrace>(m, "EnergyTrace")
      .def_readonly("t", &EnergyTrace::t)
      .def_readonly("E", &EnergyTrace::E)
      .def_readonly("D", &EnergyTrace::D)
      .def_readonly("Sdiv", &EnergyTrace::Sdiv)
      .def_readonly("Skappa", &EnergyTrace::Skappa)
      .def_readonly("Q", &EnergyTrace::Q)
      .def_readonly("balance_residual", &EnergyTrace::balance_residual)
      .def_readonly("max_balance_residual",
                    &EnergyTrace::max_balance_residual);

  py::class_<EvolveResult>(m, "EvolveResult")
      .def_readonly("trace", &EvolveResult::trace)
      .def_readonly("final_state", &EvolveResult::final_state)
      .def_readonly("states", &EvolveResult::states);

  m.def("evolve", &evolve, py::arg("A"), py::arg("X0"), py::arg("dt"),
        py::arg("T"), py::arg("record_stride") = 1,
        py::arg("record_states") = false);

  py::class_<DecayFit>(m, "DecayFit")
      .def_readonly("energy_rate", &DecayFit::energy_rate)
      .def_readonly("state_rate", &DecayFit::state_rate)
      .def_readonly("amplitude", &DecayFit::amplitude)
      .def_readonly("rsq", &DecayFit::rsq);
  m.def("decay_fit", &decay_fit, py::arg("t"), py::arg("E"),
        py::arg("lo") = 0.1, py::arg("hi") = 0.9);

  py::class_<DatkoReport>(m, "DatkoReport")
      .def_readonly("Cstar", &DatkoReport::Cstar)
      .def_readonly("Cstar_half", &DatkoReport::Cstar_half)
      .def_readonly("reldiff", &DatkoReport::reldiff)
      .def_readonly("passed", &DatkoReport::pass);
  m.def("datko_check", &datko_check);

  py::class_<SpectrumReport>(m, "SpectrumReport")
      .def_readonly("eigs", &SpectrumReport::eigs)
      .def_readonly("n_zero", &SpectrumReport::n_zero)
      .def_readonly("gap", &SpectrumReport::gap)
      .def_readonly("alignment", &SpectrumReport::alignment);
  m.def("spectrum", &spectrum, py::arg("A"), py::arg("max_dim") = 6000);

  py::class_<MultiplierReport>(m, "MultiplierReport")
      .def_readonly("pressure_recovery", &MultiplierReport::pressure_recovery)
      .def_readonly("boundary_pairing", &MultiplierReport::boundary_pairing)
      .def_readonly("flux_trace", &MultiplierReport::flux_trace)
      .def_readonly("lower_order", &MultiplierReport::lower_order)
      .def_readonly("plate_multiplier", &MultiplierReport::plate_multiplier)
      .def_readonly("trace_identity", &MultiplierReport::trace_identity)
      .def_readonly("C0", &MultiplierReport::C0)
      .def_readonly("Ceps", &MultiplierReport::Ceps)
      .def_readonly("slack", &MultiplierReport::slack)
      .def_readonly("Cstar", &MultiplierReport::Cstar);
  m.def("multiplier_report", &multiplier_report, py::arg("A"),
        py::arg("elliptic"), py::arg("run"), py::arg("psiU"));
  m.def("slowest_mode",
        [](const Generator& A, double sigma, int iters, std::uint64_t seed,
           bool offnull) {
          auto r = slowest_mode(A, sigma, iters, seed, offnull);
          return py::make_tuple(r.v, r.lambda);
        },
        py::arg("A"), py::arg("sigma"), py::arg("iters") = 200,
        py::arg("seed") = 7, py::arg("offnull") = true);

  m.def("parse_config", [](const std::string& text) {
    auto c = parse_config(text);
    return c.resolved_line();
  });
  m.def("run_subcommand",
        [](const std::string& name, const std::string& config_text,
           const std::string& out_dir) {
          auto cfg = parse_config(config_text);
          if (!out_dir.empty()) cfg.out_dir = out_dir;
          return run_subcommand(name, cfg);
        },
        py::arg("name"), py::arg("config_text") = "",
        py::arg("out_dir") = "");
}

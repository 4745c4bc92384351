#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pvb/commands.hpp"
#include "pvb/errors.hpp"

namespace py = pybind11;
using namespace pvb;

namespace {

py::dict row_to_dict(const ReportRow& r) {
  py::dict d;
  d["experiment"] = r.experiment;
  d["representation"] = r.representation;
  d["n"] = r.n;
  d["nx"] = r.nx;
  d["np"] = r.np;
  d["prune_parameter"] = r.prune_parameter;
  d["fraction"] = r.fraction;
  d["cond_s"] = r.cond_s;
  d["h_norm"] = r.h_norm;
  d["level"] = r.level;
  d["eigenvalue"] = r.eigenvalue;
  d["reference"] = r.reference;
  d["reference_kind"] = r.reference_kind;
  d["abs_error"] = r.abs_error;
  d["deviation"] = r.deviation;
  d["flags"] = r.flags;
  return d;
}

py::dict result_to_dict(const CommandResult& r) {
  py::list rows;
  for (const auto& row : r.rows) rows.append(row_to_dict(row));
  py::dict d;
  d["exit_code"] = r.exit_code;
  d["rows"] = rows;
  d["diagnostics"] = r.diagnostics;
  d["files"] = r.files;
  return d;
}

py::dict spectrum_to_dict(const Spectrum& s) {
  py::dict d;
  d["values"] = s.values;
  d["representation"] = std::string(to_string(s.meta.representation));
  d["basis_size"] = s.meta.basis_size;
  d["cond_s"] = s.meta.cond_s;
  d["prune_fraction"] = s.meta.prune_fraction;
  d["max_imag"] = s.meta.max_imag;
  d["regularized"] = s.meta.regularized;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pvb, m) {
  m.doc() = "Contracted von Neumann lattice bases over discrete variable representations.";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<EmptyMask>(m, "EmptyMask", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  py::class_<Harmonic>(m, "Harmonic")
      .def(py::init<double>(), py::arg("omega") = 1.0)
      .def_readwrite("omega", &Harmonic::omega);
  py::class_<Morse>(m, "Morse")
      .def(py::init<double, double, double>(), py::arg("depth") = 10.0, py::arg("width") = 1.0,
           py::arg("center") = 0.0)
      .def_readwrite("depth", &Morse::depth)
      .def_readwrite("width", &Morse::width)
      .def_readwrite("center", &Morse::center);
  py::class_<QuarticDoubleWell>(m, "QuarticDoubleWell")
      .def(py::init<double, double>(), py::arg("c2") = 1.0, py::arg("c4") = 0.1)
      .def_readwrite("c2", &QuarticDoubleWell::c2)
      .def_readwrite("c4", &QuarticDoubleWell::c4);

  py::class_<KeepAll>(m, "KeepAll").def(py::init<>());
  py::class_<EnergyShell>(m, "EnergyShell")
      .def(py::init<double>(), py::arg("cutoff"))
      .def_readwrite("cutoff", &EnergyShell::cutoff);
  py::class_<TopKByShellEnergy>(m, "TopK")
      .def(py::init<int>(), py::arg("k"))
      .def_readwrite("k", &TopKByShellEnergy::k);

  py::class_<DvrBasis>(m, "DvrBasis")
      .def_property_readonly("family", [](const DvrBasis& b) { return std::string(to_string(b.family)); })
      .def_readonly("points", &DvrBasis::points)
      .def_readonly("weights", &DvrBasis::weights)
      .def_readonly("a", &DvrBasis::a)
      .def_readonly("b", &DvrBasis::b)
      .def("__len__", &DvrBasis::size);
  m.def("sinc_dvr",
        [](double x0, double length, int n) { return make_sinc_dvr(build_periodic_grid(x0, length, n)); },
        py::arg("x0"), py::arg("length"), py::arg("n"));
  m.def("legendre_dvr", &build_legendre_dvr, py::arg("a"), py::arg("b"), py::arg("n"));

  py::class_<HamiltonianMatrix>(m, "HamiltonianMatrix")
      .def_readonly("matrix", &HamiltonianMatrix::matrix)
      .def_readonly("potential", &HamiltonianMatrix::potential)
      .def_readonly("mass", &HamiltonianMatrix::mass);
  m.def("build_hamiltonian", &build_hamiltonian, py::arg("basis"), py::arg("model"),
        py::arg("mass") = 1.0);

  py::class_<VnLattice>(m, "VnLattice")
      .def_readonly("nx", &VnLattice::nx)
      .def_readonly("np", &VnLattice::np)
      .def_readonly("dx", &VnLattice::dx)
      .def_readonly("dp", &VnLattice::dp)
      .def_readonly("alpha", &VnLattice::alpha)
      .def_readonly("heuristic", &VnLattice::heuristic)
      .def_property_readonly("centers",
                             [](const VnLattice& lat) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& c : lat.centers) out.emplace_back(c.x, c.p);
                               return out;
                             })
      .def("__len__", &VnLattice::size);
  m.def(
      "build_lattice",
      [](const DvrBasis& dvr, int nx, int np, const std::string& sampling) {
        return build_lattice(dvr, nx, np, gaussian_sampling_from_string(sampling));
      },
      py::arg("basis"), py::arg("nx"), py::arg("np"), py::arg("sampling") = "bare");

  py::class_<FrameMatrices>(m, "FrameMatrices")
      .def_readonly("g", &FrameMatrices::g)
      .def_readonly("s", &FrameMatrices::s)
      .def_readonly("s_inv", &FrameMatrices::s_inv)
      .def_readonly("b", &FrameMatrices::b)
      .def_readonly("cond_s", &FrameMatrices::cond_s)
      .def_readonly("regularized", &FrameMatrices::regularized);
  m.def("build_frame_matrix", &build_frame_matrix, py::arg("basis"), py::arg("lattice"));

  py::class_<PruneMask>(m, "PruneMask")
      .def_readonly("retained", &PruneMask::retained)
      .def_readonly("fraction", &PruneMask::fraction)
      .def_readonly("strategy", &PruneMask::strategy);
  m.def("build_mask", &build_mask, py::arg("lattice"), py::arg("model"), py::arg("mass"),
        py::arg("strategy"));

  m.def(
      "solve_direct", [](const HamiltonianMatrix& h) { return spectrum_to_dict(solve_direct(h)); },
      py::arg("h"));
  m.def(
      "solve_pvb",
      [](const HamiltonianMatrix& h, const FrameMatrices& frame, std::optional<PruneMask> mask,
         const std::string& rep) {
        const PruneMask use = mask ? *mask : full_mask(h.size());
        return spectrum_to_dict(solve_pvb(h, frame, use, representation_from_string(rep)));
      },
      py::arg("h"), py::arg("frame"), py::arg("mask") = py::none(),
      py::arg("representation") = "pvb-symmetric");
  m.def(
      "compare_spectra",
      [](const std::vector<double>& a, const std::vector<double>& b, int k) {
        Spectrum sa;
        Spectrum sb;
        sa.values = a;
        sb.values = b;
        return compare_spectra(sa, sb, k);
      },
      py::arg("a"), py::arg("b"), py::arg("k"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readwrite("id", &ExperimentConfig::id)
      .def_readwrite("output_dir", &ExperimentConfig::output_dir)
      .def_readwrite("sizes", &ExperimentConfig::sizes)
      .def_readwrite("mass", &ExperimentConfig::mass)
      .def("__eq__", [](const ExperimentConfig& a, const ExperimentConfig& b) { return a == b; });
  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", &parse_config_string, py::arg("text"));
  m.def("serialize_config", &serialize_config, py::arg("config"));

  m.def(
      "cmd_solve", [](const ExperimentConfig& c) { return result_to_dict(cmd_solve(c)); },
      py::arg("config"));
  m.def(
      "cmd_converge", [](const ExperimentConfig& c) { return result_to_dict(cmd_converge(c)); },
      py::arg("config"));
  m.def(
      "cmd_prune_scan", [](const ExperimentConfig& c) { return result_to_dict(cmd_prune_scan(c)); },
      py::arg("config"));
  m.def(
      "cmd_basis_dump",
      [](const ExperimentConfig& c, std::vector<int> indices, int plot_points) {
        return result_to_dict(cmd_basis_dump(c, std::move(indices), plot_points));
      },
      py::arg("config"), py::arg("indices") = std::vector<int>{}, py::arg("plot_points") = 1001);
}

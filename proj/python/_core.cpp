// Copyright 2026 The cvcluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>

#include "cvcluster/canonical.hpp"
#include "cvcluster/entanglement.hpp"
#include "cvcluster/io.hpp"
#include "cvcluster/linear_optical.hpp"
#include "cvcluster/report.hpp"
#include "cvcluster/teleport.hpp"
#include "cvcluster/topology.hpp"

namespace py = pybind11;
using namespace cvcluster;

namespace {

// Accepts an int N >= 1, math.inf or the string "inf".
Rails to_rails(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) {
    const auto s = obj.cast<std::string>();
    if (s == "inf") return Rails::infinite();
    return Rails::finite(std::stoi(s));
  }
  if (py::isinstance<py::float_>(obj)) {
    const double v = obj.cast<double>();
    if (std::isinf(v) && v > 0) return Rails::infinite();
    throw py::value_error("rails must be an integer or inf");
  }
  return Rails::finite(obj.cast<int>());
}

ClusterFamily to_family(const std::string& s) { return parse_family(s); }

py::dict table_dict(const Table& t) {
  py::list rows;
  for (const auto& row : t.rows) {
    py::list out;
    for (const auto& cell : row) std::visit([&](const auto& v) { out.append(v); }, cell);
    rows.append(out);
  }
  py::dict d;
  d["columns"] = t.columns;
  d["rows"] = rows;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Continuous-variable cluster-state teleportation engine";

  py::register_exception<TopologyError>(m, "TopologyError", PyExc_ValueError);
  py::register_exception<WeightError>(m, "WeightError", PyExc_ValueError);
  py::register_exception<SynthesisError>(m, "SynthesisError", PyExc_RuntimeError);
  py::register_exception<XFormError>(m, "XFormError", PyExc_RuntimeError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_RuntimeError);

  py::class_<ClusterSpec>(m, "ClusterSpec")
      .def_property_readonly("node_count", &ClusterSpec::node_count)
      .def("edges", &ClusterSpec::edges)
      .def("neighbors", &ClusterSpec::neighbors, py::arg("node"))
      .def("degree", &ClusterSpec::degree, py::arg("node"))
      .def("adjacency_matrix", &ClusterSpec::adjacency_matrix)
      .def("__repr__", [](const ClusterSpec& s) {
        return "<ClusterSpec nodes=" + std::to_string(s.node_count()) +
               " edges=" + std::to_string(s.edges().size()) + ">";
      });

  m.def("linear_chain", &linear_chain, py::arg("nodes"));
  m.def("nrail", &nrail, py::arg("rails"));
  m.def("topology", &topology_by_name, py::arg("name"),
        "Topology by name: \"L4\", \"L6\", \"3R\" or \"nrail:3\".");
  m.def("common_neighbor_matrix", &common_neighbor_matrix, py::arg("spec"));

  m.def(
      "gmatrix",
      [](const ClusterSpec& spec) { return solve_geometric_constraints(spec).matrix(); },
      py::arg("spec"));
  m.def(
      "umatrix",
      [](const ClusterSpec& spec, const std::string& frame) {
        SynthesisOptions opt;
        if (frame == "sqrt") {
          opt.frame = FactorFrame::SymmetricSqrt;
        } else if (frame != "ldlt") {
          throw py::value_error("frame must be ldlt or sqrt");
        }
        return synthesize_u(spec, opt).matrix();
      },
      py::arg("spec"), py::arg("frame") = "ldlt");

  py::class_<Correlators>(m, "Correlators")
      .def(py::init([](double a, double b, double c) { return Correlators{a, b, c}; }),
           py::arg("a"), py::arg("b"), py::arg("c"))
      .def_readwrite("a", &Correlators::a)
      .def_readwrite("b", &Correlators::b)
      .def_readwrite("c", &Correlators::c)
      .def("covariance", [](const Correlators& c) { return covariance_matrix(c); })
      .def("__repr__", [](const Correlators& c) {
        return "Correlators(a=" + format_double(c.a) + ", b=" + format_double(c.b) +
               ", c=" + format_double(c.c) + ")";
      });

  py::class_<SymplecticPair>(m, "SymplecticPair")
      .def_readonly("minus", &SymplecticPair::minus)
      .def_readonly("plus", &SymplecticPair::plus);

  m.def("symplectic_pt", &symplectic_pt, py::arg("correlators"));
  m.def("symplectic_spectrum", &symplectic_spectrum, py::arg("covariance"));
  m.def("symplectic_pt_generic", &symplectic_pt_generic, py::arg("covariance"));
  m.def("log_negativity", &log_negativity, py::arg("lambda_minus"));
  m.def("en_of", &en_of, py::arg("correlators"));
  m.def("ideal_log_negativity", &ideal_log_negativity);

  m.def(
      "closed_form_correlators",
      [](const std::string& family, const py::object& rails, double r) {
        return closed_form_correlators(to_family(family), to_rails(rails), r);
      },
      py::arg("family"), py::arg("rails"), py::arg("r"));
  m.def(
      "en_closed",
      [](const std::string& family, const py::object& rails, double r) {
        return en_closed(to_family(family), to_rails(rails), r);
      },
      py::arg("family"), py::arg("rails"), py::arg("r"));
  m.def(
      "rbar",
      [](const std::string& family, const py::object& rails) { return rbar(to_family(family), to_rails(rails)); },
      py::arg("family"), py::arg("rails"));
  m.def(
      "zero_entanglement_boundary",
      [](const std::string& family, const py::object& rails) {
        return zero_entanglement_boundary(to_family(family), to_rails(rails));
      },
      py::arg("family"), py::arg("rails"));

  py::class_<WitnessValue>(m, "WitnessValue")
      .def_readonly("w", &WitnessValue::w)
      .def_readonly("bound", &WitnessValue::bound)
      .def_readonly("entangled", &WitnessValue::entangled);
  m.def("witness", &witness_wg, py::arg("correlators"), py::arg("g"));
  m.def("optimal_gain", &optimal_gain, py::arg("correlators"));
  m.def("db_of_r", &db_of_r, py::arg("r"));

  py::class_<PipelineModel>(m, "Pipeline")
      .def(py::init([](const std::string& family, int rails) { return PipelineModel(to_family(family), rails); }),
           py::arg("family"), py::arg("rails"))
      .def("correlators", &PipelineModel::correlators, py::arg("r"))
      .def("log_negativity", &PipelineModel::log_negativity, py::arg("r"))
      .def_property_readonly("rails", &PipelineModel::rails);

  m.def(
      "optimal_weights",
      [](const Eigen::MatrixXd& cov) { return optimal_weights(cov).values(); },
      py::arg("noise_covariance"));

  m.def(
      "scenarios",
      [](int max_rails, double r) {
        py::list out;
        for (const auto& s : builtin_scenarios(max_rails)) {
          const ScenarioReport rep = run_scenario(s, r);
          py::dict d;
          d["name"] = rep.name;
          d["residual"] = rep.worst_identity_residual();
          d["output_commutator"] = rep.output_commutator;
          d["corrections"] = rep.corrections;
          d["ok"] = rep.ok();
          out.append(d);
        }
        return out;
      },
      py::arg("max_rails") = 10, py::arg("r") = 0.5);

  m.def(
      "verify",
      [](const std::string& suite, int max_rails) {
        py::list out;
        for (const auto& c : run_verify(parse_suite(suite), max_rails)) {
          py::dict d;
          d["suite"] = c.suite;
          d["name"] = c.name;
          d["pass"] = c.pass;
          d["worst"] = c.worst;
          d["tolerance"] = c.tolerance;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("max_rails") = 20);

  m.def(
      "rbar_table", [](const std::vector<int>& rails) { return table_dict(rbar_table(rails)); },
      py::arg("rails") = std::vector<int>{1, 2, 3, 100});
}

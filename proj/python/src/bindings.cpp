// Copyright 2026 The espec Authors
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

#include <sstream>
#include <stdexcept>

#include "espec/cli.hpp"
#include "espec/error.hpp"
#include "espec/labels.hpp"
#include "espec/oracle.hpp"
#include "espec/path.hpp"
#include "espec/protocol.hpp"
#include "espec/specfile.hpp"
#include "espec/version.hpp"

namespace py = pybind11;
using namespace espec;

namespace {

struct Loaded {
  SpecDocument doc;
  Network network;
};

Loaded load(const std::string& text) {
  ParseResult r = parse(text);
  if (!r.ok()) {
    const auto& d = r.diagnostics.front();
    throw std::invalid_argument(std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
                                d.code + ": " + d.message);
  }
  Network n = to_network(r.document);
  if (const auto d = validate(n); !d.empty()) {
    throw std::invalid_argument(d.front().code + ": " + d.front().message);
  }
  return {std::move(r.document), std::move(n)};
}

const Path& find(const Loaded& l, const std::string& name) {
  const PathRecord* p = l.doc.find_path(name);
  if (!p) throw std::invalid_argument("no path named '" + name + "'");
  return p->path;
}

py::list diagnostics(const std::string& text) {
  py::list out;
  const ParseResult r = parse(text);
  for (const auto& d : r.diagnostics) {
    out.append(py::dict(py::arg("code") = d.code, py::arg("line") = d.line,
                        py::arg("column") = d.column, py::arg("message") = d.message));
  }
  if (!r.ok()) return out;
  const Network n = to_network(r.document);
  for (const auto& d : validate(n)) {
    out.append(py::dict(py::arg("code") = d.code, py::arg("line") = 0, py::arg("column") = 0,
                        py::arg("message") = d.message));
  }
  for (const auto& p : r.document.paths) {
    for (const auto& d : validate_path(n, p.path)) {
      out.append(py::dict(py::arg("code") = d.code, py::arg("line") = p.line,
                          py::arg("column") = 0, py::arg("message") = d.message));
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_espec, m) {
  m.attr("__version__") = kVersion;

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ZeroAmplitude>(m, "ZeroAmplitude", PyExc_RuntimeError);
  py::register_exception<NotCompilable>(m, "NotCompilable", PyExc_RuntimeError);
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::enum_<Linearity>(m, "Linearity")
      .value("Linear", Linearity::Linear)
      .value("AntiLinear", Linearity::AntiLinear);

  py::class_<FunctionalLabel>(m, "FunctionalLabel")
      .def(py::init<CMatrix, Linearity>(), py::arg("matrix"),
           py::arg("linearity") = Linearity::AntiLinear)
      .def_property_readonly("matrix", &FunctionalLabel::matrix)
      .def_property_readonly("linearity", &FunctionalLabel::linearity)
      .def("__call__", &FunctionalLabel::operator())
      .def("__repr__", [](const FunctionalLabel& l) {
        std::ostringstream o;
        o << "FunctionalLabel(" << to_string(l.linearity()) << ", " << l.cod_dim() << "x"
          << l.dom_dim() << ")";
        return o.str();
      });

  m.def("compose", &compose, py::arg("g"), py::arg("f"));
  m.def("adjoint", py::overload_cast<const FunctionalLabel&>(&adjoint));
  m.def("label", [](const std::string& name) {
    auto l = named_label(name);
    if (!l) throw std::invalid_argument("unknown label '" + name + "'");
    return *l;
  });
  m.def("prop_eq", py::overload_cast<const CMatrix&, const CMatrix&, double>(&prop_eq),
        py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTol);

  m.def("diagnostics", &diagnostics, py::arg("text"),
        "Parse, network and path diagnostics of a document; empty when valid.");
  m.def("canonical", [](const std::string& text) {
    const ParseResult r = parse(text);
    if (!r.ok()) throw std::invalid_argument(r.diagnostics.front().message);
    return serialize(r.document);
  });
  m.def(
      "predict",
      [](const std::string& text, const std::string& path) {
        const Loaded l = load(text);
        return CVector(predict_output(l.network, find(l, path)));
      },
      py::arg("text"), py::arg("path"));
  m.def(
      "composite",
      [](const std::string& text, const std::string& path) {
        const Loaded l = load(text);
        return composite(l.network, find(l, path));
      },
      py::arg("text"), py::arg("path"));
  m.def(
      "verify",
      [](const std::string& text, const std::string& path, int trials, std::uint64_t seed,
         double tol) {
        const Loaded l = load(text);
        const VerifyReport r = verify_theorem(l.network, find(l, path), trials, seed, tol);
        py::list rows;
        for (const auto& t : r.trials) {
          rows.append(py::dict(
              py::arg("trial") = t.trial, py::arg("seed") = t.seed,
              py::arg("status") = t.status == TrialStatus::Pass   ? "pass"
                                  : t.status == TrialStatus::Fail ? "fail"
                                                                  : "zero",
              py::arg("residual") = t.residual, py::arg("mismatch") = t.mismatch));
        }
        return py::dict(py::arg("passed") = r.passed, py::arg("failed") = r.failed,
                        py::arg("zero") = r.zero, py::arg("ok") = r.ok(),
                        py::arg("trials") = rows);
      },
      py::arg("text"), py::arg("path"), py::arg("trials") = 20, py::arg("seed") = 0,
      py::arg("tol") = kDefaultTol);
  m.def(
      "compile",
      [](const std::string& text, const std::string& path) {
        Loaded l = load(text);
        const Path& p = find(l, path);
        const CompiledProtocol c =
            compile_unconditional(l.network, p, to_plan(l.doc), path_function(l.network, p));
        attach_protocol(l.doc, path + "_compiled", path, c);
        return serialize(l.doc);
      },
      py::arg("text"), py::arg("path"),
      "Compiles the document's measurements on `path` and returns the document with the "
      "protocol and its corrections attached.");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}

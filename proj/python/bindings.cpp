// Python bindings for the main operations: parsing, derivatives, brackets,
// Laplacians, diagonal restriction, gauge models and the verification suites.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bvjet/hbar_series.hpp"
#include "bvjet/parser.hpp"
#include "bvjet/verify.hpp"
#include "bvjet/yang_mills.hpp"

namespace py = pybind11;
using namespace bvjet;

namespace {

/// Opaque handle around the immutable field content.
struct PyContent {
  ContentPtr ptr;
};

Side sideFrom(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw std::invalid_argument("side must be 'left' or 'right'");
}

int coordFrom(const ContentPtr& content, const std::string& name) {
  const int coord = content ? content->indexOf(name) : -1;
  if (coord < 0) throw std::invalid_argument("undeclared coordinate '" + name + "'");
  return coord;
}

JetVar varFrom(const ContentPtr& content, const std::string& name, const std::string& suffix) {
  MultiIndex sigma;
  for (char c : suffix) {
    if (c < 'x' || c > 'z') throw std::invalid_argument("bad derivative suffix");
    sigma = sigma.plus(c - 'x');
  }
  return JetVar{coordFrom(content, name), sigma, 0};
}

py::dict reportToDict(const Report& r) {
  py::list checks;
  for (const auto& c : r.checks) {
    py::dict d;
    d["name"] = c.name;
    d["anchor"] = c.anchor;
    d["verdict"] = c.pass ? "pass" : "fail";
    d["detail"] = c.detail;
    checks.append(d);
  }
  py::dict out;
  out["command"] = r.command;
  out["checks"] = checks;
  out["elapsed_ms"] = r.elapsedMs;
  out["all_pass"] = r.allPass();
  return out;
}

}  // namespace

PYBIND11_MODULE(_bvjet, m) {
  m.doc() = "graded variational calculus on jet spaces of a BV bundle";

  py::register_exception<ParseError>(m, "ParseError");

  py::class_<PyContent>(m, "FieldContent")
      .def_property_readonly("base_dim",
                             [](const PyContent& c) { return c.ptr->baseDim(); })
      .def_property_readonly("names",
                             [](const PyContent& c) {
                               std::vector<std::string> names;
                               for (const auto& d : c.ptr->coords()) names.push_back(d.name);
                               return names;
                             })
      .def("parity", [](const PyContent& c, int i) { return c.ptr->parity(i); })
      .def("__repr__", [](const PyContent& c) {
        std::string r = "FieldContent(dim=" + std::to_string(c.ptr->baseDim());
        for (const auto& d : c.ptr->coords())
          r += ", " + d.name + (d.kind == CoordKind::Field ? "" : "+");
        return r + ")";
      });

  m.def(
      "field_content",
      [](const std::string& decls, int dim) { return PyContent{parseFieldDecls(decls, dim)}; },
      py::arg("decls"), py::arg("dim") = 1,
      "declare the BV fibre coordinates, e.g. 'q parity 0; p antifield_of q'");

  py::class_<GradedExpr>(m, "GradedExpr")
      .def("__str__", [](const GradedExpr& e) { return e.str(); })
      .def("__repr__", [](const GradedExpr& e) { return "<GradedExpr " + e.str() + ">"; })
      .def("__eq__", [](const GradedExpr& a, const GradedExpr& b) { return a == b; })
      .def("__add__", [](const GradedExpr& a, const GradedExpr& b) { return a + b; })
      .def("__sub__", [](const GradedExpr& a, const GradedExpr& b) { return a - b; })
      .def("__mul__", [](const GradedExpr& a, const GradedExpr& b) { return a * b; })
      .def("__neg__", [](const GradedExpr& e) { return -e; })
      .def("__pow__", [](const GradedExpr& e, int n) { return e.pow(n); })
      .def("is_zero", [](const GradedExpr& e) { return e.isZero(); })
      .def("parity", [](const GradedExpr& e) { return e.parity(); })
      .def(
          "total_derivative",
          [](const GradedExpr& e, int dir) { return e.totalDerivative(dir, 0); },
          py::arg("dir") = 0)
      .def(
          "partial",
          [](const GradedExpr& e, const std::string& name, const std::string& suffix,
             const std::string& side) {
            return e.partial(varFrom(e.content(), name, suffix), sideFrom(side));
          },
          py::arg("name"), py::arg("suffix") = "", py::arg("side") = "right")
      .def(
          "euler",
          [](const GradedExpr& e, const std::string& name, const std::string& side) {
            return e.euler(coordFrom(e.content(), name), sideFrom(side), 0);
          },
          py::arg("name"), py::arg("side") = "right")
      .def("is_trivial_density", [](const GradedExpr& e) { return isTrivialDensity(e); });

  m.def(
      "parse",
      [](const std::string& text, const PyContent& c, int label) {
        return parseDensityExpr(text, c.ptr, label);
      },
      py::arg("text"), py::arg("content"), py::arg("label") = 0,
      "parse a density in the expression language");

  py::class_<LocalFunctional>(m, "LocalFunctional")
      .def("__str__", [](const LocalFunctional& f) { return f.str(); })
      .def("__repr__",
           [](const LocalFunctional& f) { return "<LocalFunctional " + f.str() + ">"; })
      .def("__eq__", [](const LocalFunctional& a, const LocalFunctional& b) { return a == b; })
      .def("__add__", [](const LocalFunctional& a, const LocalFunctional& b) { return a + b; })
      .def("__sub__", [](const LocalFunctional& a, const LocalFunctional& b) { return a - b; })
      .def("__mul__", [](const LocalFunctional& a, const LocalFunctional& b) { return a * b; })
      .def("__neg__", [](const LocalFunctional& f) { return -f; })
      .def("__pow__", [](const LocalFunctional& f, int n) { return f.pow(n); })
      .def("is_structurally_zero",
           [](const LocalFunctional& f) { return f.isStructurallyZero(); });

  m.def(
      "integral", [](const GradedExpr& density) { return LocalFunctional::block(density); },
      py::arg("density"), "the integral functional of a density over its private base copy");
  m.def(
      "schouten_jet",
      [](const LocalFunctional& f, const LocalFunctional& g) { return schoutenJet(f, g); },
      py::arg("f"), py::arg("g"));
  m.def(
      "laplacian_jet", [](const LocalFunctional& f) { return laplacianJet(f); }, py::arg("f"));
  m.def(
      "functional_equal",
      [](const LocalFunctional& f, const LocalFunctional& g) { return functionalEqual(f, g); },
      py::arg("f"), py::arg("g"), "equality modulo total divergences (sound, possibly incomplete)");
  m.def(
      "functional_zero", [](const LocalFunctional& f) { return functionalZero(f); },
      py::arg("f"));

  py::class_<ExtendedFunctional>(m, "ExtendedFunctional")
      .def("__str__", [](const ExtendedFunctional& f) { return f.str(); })
      .def("__repr__",
           [](const ExtendedFunctional& f) { return "<ExtendedFunctional\n" + f.str() + ">"; })
      .def("__eq__",
           [](const ExtendedFunctional& a, const ExtendedFunctional& b) { return a == b; })
      .def("__add__",
           [](const ExtendedFunctional& a, const ExtendedFunctional& b) { return a + b; })
      .def("__sub__",
           [](const ExtendedFunctional& a, const ExtendedFunctional& b) { return a - b; })
      .def("__mul__",
           [](const ExtendedFunctional& a, const ExtendedFunctional& b) { return a * b; })
      .def("is_structurally_zero",
           [](const ExtendedFunctional& f) { return f.isStructurallyZero(); })
      .def("term_count", [](const ExtendedFunctional& f) { return f.terms().size(); });

  m.def(
      "extend", [](const LocalFunctional& f) { return ExtendedFunctional::fromLocal(f); },
      py::arg("f"), "view a local functional as a multi-base-point object");
  m.def(
      "functional_derivative",
      [](const ExtendedFunctional& f, const std::string& name, const std::string& side) {
        return functionalDerivative(f, coordFrom(f.content(), name), sideFrom(side));
      },
      py::arg("f"), py::arg("name"), py::arg("side") = "right");
  m.def(
      "schouten",
      [](const ExtendedFunctional& f, const ExtendedFunctional& g) {
        return functionalSchouten(f, g);
      },
      py::arg("f"), py::arg("g"), "the functional Schouten bracket with symbolic delta couplings");
  m.def(
      "laplacian", [](const ExtendedFunctional& f) { return functionalLaplacian(f); },
      py::arg("f"), "the normalized functional BV-Laplacian");
  m.def(
      "restrict_to_diagonal",
      [](const ExtendedFunctional& f, bool normalizeFree) {
        return restrictToDiagonal(f, normalizeFree);
      },
      py::arg("f"), py::arg("normalize_free") = false);

  py::class_<YangMillsModel>(m, "YangMillsModel")
      .def(py::init([](int dim, const std::string& algebra) {
             return YangMillsModel(dim, LieAlgebraSpec::preset(algebra));
           }),
           py::arg("dim") = 2, py::arg("algebra") = "su2")
      .def_property_readonly("content",
                             [](const YangMillsModel& m2) { return PyContent{m2.content()}; })
      .def("bv_action", [](const YangMillsModel& m2) { return buildBVAction(m2); })
      .def("verify_laplacian_zero",
           [](const YangMillsModel& m2) {
             std::vector<std::tuple<std::string, bool, std::string>> out;
             for (const auto& c : verifyLaplacianZero(m2))
               out.emplace_back(c.name, c.pass, c.detail);
             return out;
           })
      .def("verify_classical_master", [](const YangMillsModel& m2) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& c : verifyClassicalMaster(m2))
          out.emplace_back(c.name, c.pass, c.detail);
        return out;
      });

  m.def(
      "check_qme",
      [](const LocalFunctional& s, int order) {
        QmeReport r = checkQme(HbarSeries::fromLocal(s, order));
        py::dict d;
        d["pass"] = r.pass;
        d["exp_route_pass"] = r.expRoutePass;
        py::list orders;
        for (const auto& o : r.orders) {
          py::dict od;
          od["hbar_power"] = o.hbarPower;
          od["zero"] = o.zero;
          orders.append(od);
        }
        d["orders"] = orders;
        d["residual"] = r.residual.str();
        return d;
      },
      py::arg("s"), py::arg("order") = 3);

  m.def(
      "verify",
      [](const std::string& suite, uint64_t seed) { return reportToDict(runVerifySuite(suite, seed)); },
      py::arg("suite"), py::arg("seed") = 20240817,
      "run a verification suite and return the report");
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffalg/azumaya.hpp"
#include "diffalg/cech.hpp"
#include "diffalg/descent.hpp"
#include "diffalg/dmod.hpp"
#include "diffalg/errors.hpp"
#include "diffalg/matrix.hpp"
#include "diffalg/parse.hpp"
#include "diffalg/ring.hpp"
#include "diffalg/scenario.hpp"

namespace py = pybind11;
using namespace diffalg;

namespace {

struct PyRing {
  RingPtr r;
};

struct PyTower {
  TowerPtr t;
};

Mat matrix_from_rows(const PyRing& ring,
                     const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty() || rows[0].empty())
    fail("ShapeMismatch", "matrix needs at least one row and column");
  Mat m(ring.r, rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      fail("ShapeMismatch", "ragged matrix rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m.at(i, j) = parse_expr(ring.r, rows[i][j]);
  }
  return m;
}

DatumKind datum_kind(const std::string& s) {
  if (s == "module") return DatumKind::Module;
  if (s == "algebra") return DatumKind::Algebra;
  fail("DeclarationError", "datum kind must be 'module' or 'algebra'");
}

SheafKind sheaf_kind_of(const std::string& s) {
  if (s == "units") return SheafKind::Units;
  if (s == "constant_units") return SheafKind::ConstantUnits;
  if (s == "additive") return SheafKind::Additive;
  if (s == "pgl") return SheafKind::ProjectiveLinear;
  fail("DeclarationError", "unknown cochain kind '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_diffalg, mod) {
  mod.doc() = "Exact differential algebra: ring towers, induced derivations, "
              "matrix algebras, descent, and Cech boundary maps";

  py::register_exception<Error>(mod, "DiffAlgError");

  py::class_<PyRing>(mod, "Ring")
      .def("parse", [](const PyRing& r, const std::string& s) {
        return parse_expr(r.r, s);
      })
      .def("zero", [](const PyRing& r) { return r.r->zero(); })
      .def("one", [](const PyRing& r) { return r.r->one(); })
      .def("__repr__", [](const PyRing& r) { return r.r->describe(); });

  mod.def("base_ring",
          [](const std::vector<std::string>& vars,
             const std::map<std::string, std::string>& derivs) {
            return PyRing{make_base(vars, derivs)};
          },
          py::arg("vars"), py::arg("derivs"));
  mod.def("adjoin",
          [](const PyRing& p, const std::vector<std::string>& vars,
             const std::map<std::string, std::string>& derivs) {
            return PyRing{make_adjoin(p.r, vars, derivs)};
          });
  mod.def("localize", [](const PyRing& p, const std::string& at) {
    return PyRing{make_localize(p.r, at)};
  });
  mod.def("monic_quotient",
          [](const PyRing& p, const std::string& var,
             const std::vector<std::string>& coeffs) {
            return PyRing{make_monic_quotient(p.r, var, coeffs)};
          });

  py::class_<RingElem>(mod, "Elem")
      .def("__add__", [](const RingElem& a, const RingElem& b) { return a + b; })
      .def("__sub__", [](const RingElem& a, const RingElem& b) { return a - b; })
      .def("__mul__", [](const RingElem& a, const RingElem& b) { return a * b; })
      .def("__neg__", [](const RingElem& a) { return -a; })
      .def("__eq__", [](const RingElem& a, const RingElem& b) { return a == b; })
      .def("__pow__", [](const RingElem& a, uint32_t e) { return a.pow(e); })
      .def("d", &RingElem::d)
      .def("is_zero", &RingElem::is_zero)
      .def("inverse",
           [](const RingElem& a) -> std::optional<RingElem> {
             return a.inverse();
           })
      .def("__repr__", &RingElem::to_string);

  mod.def("promote", [](const RingElem& e, const PyRing& target) {
    return promote(e, target.r);
  });
  mod.def("try_restrict",
          [](const RingElem& e, const PyRing& anc) -> std::optional<RingElem> {
            return try_restrict(e, anc.r);
          });
  mod.def("dlog", &dlog);

  py::class_<Mat>(mod, "Matrix")
      .def(py::init(&matrix_from_rows))
      .def_static("identity",
                  [](const PyRing& r, std::size_t n) {
                    return Mat::identity(r.r, n);
                  })
      .def_static("zero",
                  [](const PyRing& r, std::size_t rows, std::size_t cols) {
                    return Mat::zero(r.r, rows, cols);
                  })
      .def("rows", &Mat::rows)
      .def("cols", &Mat::cols)
      .def("at", [](const Mat& m, std::size_t i, std::size_t j) {
        if (i >= m.rows() || j >= m.cols())
          fail("ShapeMismatch", "matrix index out of range");
        return m.at(i, j);
      })
      .def("__add__", [](const Mat& a, const Mat& b) { return a + b; })
      .def("__sub__", [](const Mat& a, const Mat& b) { return a - b; })
      .def("__mul__", [](const Mat& a, const Mat& b) { return a * b; })
      .def("scale", [](const Mat& a, const RingElem& s) { return a * s; })
      .def("__eq__", [](const Mat& a, const Mat& b) { return a == b; })
      .def("transpose", &Mat::transpose)
      .def("kron", &Mat::kron)
      .def("trace", &Mat::trace)
      .def("det", &Mat::det)
      .def("d", &Mat::d)
      .def("is_zero", &Mat::is_zero)
      .def("inverse",
           [](const Mat& m) -> std::optional<Mat> { return m.inverse(); })
      .def("as_scalar",
           [](const Mat& m) -> std::optional<RingElem> { return m.as_scalar(); })
      .def("promote_to", [](const Mat& m, const PyRing& target) {
        return m.promote_to(target.r);
      })
      .def("__repr__", &Mat::to_string);

  py::class_<DiffModule>(mod, "Module")
      .def(py::init([](const PyRing& r, const Mat& conn) {
        return DiffModule(r.r, conn);
      }))
      .def("rank", &DiffModule::rank)
      .def("connection", &DiffModule::connection)
      .def("tensor", &DiffModule::tensor)
      .def("dual", &DiffModule::dual)
      .def("hom", &DiffModule::hom)
      .def("map_delta", &DiffModule::map_delta);

  mod.def("morita_check",
          [](const DiffModule& m) { return morita_check(m).ok; });
  mod.def("hom_tensor_iso_check",
          [](const DiffModule& p, const DiffModule& q, const DiffModule& p2,
             const DiffModule& q2) {
            return hom_tensor_iso_check(p, q, p2, q2).ok;
          });

  py::class_<DiffMatrixAlgebra>(mod, "MatrixAlgebra")
      .def(py::init([](const PyRing& r, std::size_t n, const Mat& z) {
        return matrix_algebra(r.r, n, z);
      }))
      .def("n", &DiffMatrixAlgebra::n)
      .def("witness", &DiffMatrixAlgebra::z)
      .def("delta", &DiffMatrixAlgebra::delta)
      .def("opposite", &DiffMatrixAlgebra::opposite)
      .def("tensor", &DiffMatrixAlgebra::tensor_alg);

  mod.def("inner_witness",
          [](const PyRing& r, std::size_t n,
             const std::vector<std::vector<Mat>>& values) {
            return inner_witness(r.r, n, values);
          });
  mod.def("is_diff_automorphism", &is_diff_automorphism);
  mod.def("rho_check",
          [](const DiffMatrixAlgebra& a) { return rho_check(a).ok; });
  mod.def("trivialize_module", [](const DiffModule& m) {
    ModuleTrivialization tr = trivialize_module(m);
    return py::make_tuple(PyRing{tr.cover.ring()}, tr.basis);
  });
  mod.def("trivialize_algebra", [](const DiffMatrixAlgebra& a) {
    AlgebraTrivialization tr = trivialize_algebra(a);
    return py::make_tuple(PyRing{tr.cover.ring()}, tr.u);
  });
  mod.def("exp_cover", [](const PyRing& r, const RingElem& b) {
    ExpCover ec = exp_cover(r.r, b);
    return py::make_tuple(PyRing{ec.cover.ring()}, ec.u);
  });

  py::class_<PyTower>(mod, "Tower")
      .def(py::init([](const PyRing& base, const PyRing& cover) {
        return PyTower{CoverTower::make(RingHom::inclusion(base.r, cover.r))};
      }))
      .def("level", [](const PyTower& t, std::size_t m) {
        return PyRing{t.t->level(m)};
      });

  py::class_<DescentDatum>(mod, "DescentDatum")
      .def(py::init([](const PyTower& t, const DiffModule& m, const Mat& phi,
                       const std::string& kind) {
        return DescentDatum(t.t, m, phi, datum_kind(kind));
      }))
      .def_static("canonical",
                  [](const PyTower& t, const DiffModule& m,
                     const std::string& kind) {
                    return DescentDatum::canonical(t.t, m, datum_kind(kind));
                  })
      .def("phi", &DescentDatum::phi)
      .def("cocycle_check", &DescentDatum::cocycle_check);

  py::class_<DescendedModule>(mod, "DescendedModule")
      .def_readonly("basis", &DescendedModule::basis)
      .def_readonly("connection", &DescendedModule::connection);
  py::class_<DescendedAlgebra>(mod, "DescendedAlgebra")
      .def_readonly("basis", &DescendedAlgebra::basis)
      .def_readonly("sc", &DescendedAlgebra::sc)
      .def_readonly("dtab", &DescendedAlgebra::dtab)
      .def_readonly("unit", &DescendedAlgebra::unit);

  mod.def("descend_module", &descend_module);
  mod.def("descend_algebra", &descend_algebra);
  mod.def("twisted_form_equiv", &twisted_form_equiv);

  py::class_<Cochain>(mod, "Cochain")
      .def(py::init([](const PyTower& t, std::size_t deg,
                       const std::string& kind, const RingElem& value) {
        return Cochain(t.t, deg, sheaf_kind_of(kind), value);
      }))
      .def(py::init([](const PyTower& t, std::size_t deg, const Mat& value) {
        return Cochain(t.t, deg, value);
      }))
      .def("degree", &Cochain::degree)
      .def("scalar", &Cochain::scalar)
      .def("matrix", &Cochain::matrix)
      .def("is_identity", &Cochain::is_identity);

  py::class_<TwoCocycle>(mod, "TwoCocycle")
      .def_readonly("value", &TwoCocycle::value)
      .def_readonly("constant_kind", &TwoCocycle::constant_kind)
      .def_readonly("degree2_identity_ok", &TwoCocycle::degree2_identity_ok);

  mod.def("cech_d", &cech_d);
  mod.def("is_cocycle", &is_cocycle);
  mod.def("is_coboundary", &is_coboundary);
  mod.def("pgl_cocycle_from_descent", &pgl_cocycle_from_descent);
  mod.def("boundary2", &boundary2, py::arg("cochain"), py::arg("lift"),
          py::arg("differential_variant") = false);
  mod.def("lift_independence_check",
          [](const Cochain& c, const Mat& l1, const Mat& l2) {
            return lift_independence_check(c, l1, l2).ok;
          });
  mod.def("boundary_additivity_check",
          [](const Cochain& cm, const Mat& lm, const Cochain& cn,
             const Mat& ln) {
            return boundary_additivity_check(cm, lm, cn, ln).ok;
          });

  mod.def("run_scenario",
          [](const std::string& json_text, uint64_t seed) {
            Report rep = run_scenario_text(json_text, seed);
            return py::make_tuple(rep.exit_status(), rep.render_machine());
          },
          py::arg("json_text"), py::arg("seed") = 7);
  mod.def("run_examples",
          [](const std::string& only, uint64_t seed) {
            Report rep = run_examples(only, seed);
            return py::make_tuple(rep.exit_status(), rep.render_machine());
          },
          py::arg("only") = std::string(), py::arg("seed") = 7);
}

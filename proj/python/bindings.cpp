#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ave/classify.hpp"
#include "ave/mclass.hpp"
#include "ave/oracle.hpp"
#include "ave/problems.hpp"
#include "ave/solver.hpp"

namespace py = pybind11;
using namespace ave;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

DenseMatrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw DimensionMismatch("A must be a 2-d array");
  const auto r = static_cast<std::size_t>(a.shape(0)), c = static_cast<std::size_t>(a.shape(1));
  return DenseMatrix(r, c, std::vector<double>(a.data(), a.data() + r * c));
}

Vector to_vector(const Array& a) {
  if (a.ndim() != 1) throw DimensionMismatch("expected a 1-d array");
  return Vector(a.data(), a.data() + a.shape(0));
}

Array to_array(const Vector& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Array to_array(const DenseMatrix& m) {
  Array out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

py::object opt(const std::optional<Vector>& v) { return v ? py::object(to_array(*v)) : py::none(); }
py::object opt(const std::optional<double>& v) { return v ? py::object(py::float_(*v)) : py::none(); }

py::dict conditions_dict(const ConditionReport& r) {
  py::dict d;
  d["is_z"] = r.is_z;
  d["satisfies_3a"] = r.satisfies_3a;
  d["satisfies_3b"] = r.satisfies_3b;
  d["v"] = opt(r.v);
  d["norm_a_inv"] = opt(r.norm_a_inv);
  d["rho_abs_a_inv"] = opt(r.rho_abs_a_inv);
  d["reason_3a"] = r.reason_3a;
  d["reason_3b"] = r.reason_3b;
  d["notes"] = r.notes;
  return d;
}

py::dict problem_dict(const ProblemFile& f) {
  py::dict d;
  d["A"] = to_array(f.problem.to_dense());
  d["b"] = to_array(f.problem.b());
  d["tridiagonal"] = f.problem.is_tridiagonal();
  d["metadata"] = f.metadata;
  return d;
}

AveProblem make_problem(const Array& a, const Array& b) { return AveProblem(to_matrix(a), to_vector(b)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Absolute value equations A x - |x| = b";

  py::register_exception<Error>(m, "AveError", PyExc_RuntimeError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DimensionTooLarge>(m, "DimensionTooLarge", PyExc_ValueError);

  m.def(
      "solve",
      [](const Array& a, const Array& b, std::optional<Array> x0, double tol,
         std::optional<std::size_t> max_iter) {
        SolverConfig cfg;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        if (x0) cfg.x0 = to_vector(*x0);
        const auto r = gnm_solve(make_problem(a, b), cfg);
        py::dict d;
        d["status"] = to_string(r.status);
        d["iterations"] = r.iterations;
        d["x"] = to_array(r.x);
        d["residual"] = r.residual;
        d["residual_history"] = r.residual_history;
        py::list iterates;
        for (const auto& x : r.iterates) iterates.append(to_array(x));
        d["iterates"] = iterates;
        d["monotone_from_k1"] = r.monotone_from_k1;
        d["notes"] = r.notes;
        return d;
      },
      py::arg("A"), py::arg("b"), py::arg("x0") = py::none(), py::arg("tol") = 1e-7,
      py::arg("max_iter") = py::none(), "Generalized Newton iteration x <- (A - D(x))^-1 b.");

  m.def(
      "diagnostics", [](const Array& a) { return conditions_dict(diagnostics(to_matrix(a))); },
      py::arg("A"));

  m.def(
      "classify",
      [](const Array& a, const Array& b) {
        const auto v = classify(make_problem(a, b));
        py::dict d;
        d["verdict"] = to_string(v.verdict);
        d["basis"] = to_string(v.basis);
        d["v_dot_b"] = opt(v.v_dot_b);
        d["witness"] = opt(v.witness);
        d["conditions"] = conditions_dict(v.conditions);
        return d;
      },
      py::arg("A"), py::arg("b"));

  m.def(
      "enumerate_solutions",
      [](const Array& a, const Array& b, double tol) {
        OracleOptions o;
        o.verify_tol = tol;
        const auto set = enumerate_solutions(make_problem(a, b), o);
        py::dict d;
        py::list iso;
        for (const auto& x : set.isolated) iso.append(to_array(x));
        d["isolated"] = iso;
        py::list br;
        for (const auto& s : set.singular_branches) {
          py::dict e;
          e["pattern"] = std::vector<int>(s.pattern.begin(), s.pattern.end());
          e["consistent"] = s.consistent;
          e["anchor"] = opt(s.anchor);
          br.append(e);
        }
        d["singular_branches"] = br;
        d["count"] = to_string(count_solutions(set).kind);
        return d;
      },
      py::arg("A"), py::arg("b"), py::arg("tol") = 1e-8);

  m.def(
      "generate",
      [](const std::string& family, std::optional<std::size_t> n, std::optional<std::uint64_t> seed) {
        const auto f = parse_family(family);
        if (!f) throw InvalidArgument("unknown family '" + family + "'");
        return problem_dict(generate(*f, n, seed));
      },
      py::arg("family"), py::arg("n") = py::none(), py::arg("seed") = py::none());

  m.def(
      "load", [](const std::string& path) { return problem_dict(load_problem(path)); }, py::arg("path"));
  m.def(
      "loads", [](const std::string& text) { return problem_dict(parse_problem(text)); }, py::arg("text"));

  m.def(
      "dumps",
      [](const Array& a, const Array& b, std::map<std::string, std::string> metadata) {
        return format_problem(ProblemFile{make_problem(a, b), std::move(metadata)});
      },
      py::arg("A"), py::arg("b"), py::arg("metadata") = std::map<std::string, std::string>{});

  m.def(
      "save",
      [](const std::string& path, const Array& a, const Array& b,
         std::map<std::string, std::string> metadata) {
        save_problem(path, ProblemFile{make_problem(a, b), std::move(metadata)});
      },
      py::arg("path"), py::arg("A"), py::arg("b"), py::arg("metadata") = std::map<std::string, std::string>{});
}

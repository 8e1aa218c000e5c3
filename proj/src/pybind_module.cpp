#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "resonorm/bifurcation.hpp"
#include "resonorm/levelset.hpp"
#include "resonorm/normalform.hpp"
#include "resonorm/verify.hpp"

namespace py = pybind11;
using namespace resonorm;

namespace {

Model make_model(int n, double delta, double nu, double b0) {
  Model m{n, delta, nu, b0};
  validate_model(m);
  return m;
}

py::list critical_points_py(int n, double delta, double nu, double b0) {
  py::list out;
  for (auto& cp : critical_points(make_model(n, delta, nu, b0))) {
    py::dict d;
    d["I"] = cp.I;
    d["phi"] = cp.phi;
    d["sigma"] = cp.sigma;
    d["kind"] = cp.saddle ? "saddle" : "center";
    d["energy"] = cp.energy;
    out.append(d);
  }
  return out;
}

py::list critical_level_sets_py(int n, double delta, double nu, double b0, int cells) {
  py::list out;
  for (auto& cs : critical_level_sets(make_model(n, delta, nu, b0), cells)) {
    py::list lines;
    for (auto& pl : cs.lines) lines.append(pl.pts);
    py::dict d;
    d["level"] = cs.level;
    d["lines"] = lines;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "resonant normal forms near a degenerate elliptic fixed point";

  // exact series operations, JSON in/out
  mod.def("series_add", [](const std::string& a, const std::string& b) {
    return series_to_json(s_add(series_from_json(a), series_from_json(b)));
  });
  mod.def("series_mul", [](const std::string& a, const std::string& b) {
    return series_to_json(s_mul(series_from_json(a), series_from_json(b)));
  });
  mod.def("lie_derivative", [](const std::string& h, const std::string& chi) {
    return series_to_json(lie_derivative(series_from_json(h), series_from_json(chi)));
  });
  mod.def(
      "lie_transform",
      [](const std::string& h, const std::string& chi, int m, int j) {
        return series_to_json(
            lie_transform(series_from_json(h), series_from_json(chi), Mono{0, 0, m, j}));
      },
      py::arg("h"), py::arg("chi"), py::arg("m") = 0, py::arg("j") = 0);
  mod.def("evaluate_polar",
          [](const std::string& h, double I, double phi, double delta, double nu) {
            auto v = evaluate_polar(series_from_json(h), I, phi, delta, nu);
            return std::complex<double>(v);
          },
          py::arg("h"), py::arg("I"), py::arg("phi"), py::arg("delta") = 0.0,
          py::arg("nu") = 0.0);

  mod.def(
      "simplify",
      [](const std::string& h, int truncation, const std::string& variant) {
        Series s = series_from_json(h);
        NfVariant v = variant == "alt-n6" ? NfVariant::AltN6 : NfVariant::Standard;
        bool family =
            s.scheme == Grading::FamilyDelta || s.scheme == Grading::FamilyPoly;
        SimplifyResult r =
            family ? simplify_family(s, truncation, v) : simplify_autonomous(s, truncation, v);
        return py::make_tuple(normal_form_to_json(r.nf), series_to_json(r.series));
      },
      py::arg("h"), py::arg("truncation"), py::arg("variant") = "standard");
  mod.def("validate_shape", [](const std::string& nf) {
    ShapeReport rep = validate_shape(normal_form_from_json(nf));
    return py::make_tuple(rep.ok, rep.violations);
  });
  mod.def("normal_form_series", [](const std::string& nf) {
    return series_to_json(normal_form_series(normal_form_from_json(nf)));
  });
  mod.def("interpolate", [](const std::string& map_json, int truncation) {
    return series_to_json(interpolate(rotation_map_from_json(map_json), truncation));
  });
  mod.def("map_from_hamiltonian", [](const std::string& h, int rot) {
    return rotation_map_to_json(map_from_hamiltonian(series_from_json(h), rot));
  });
  mod.def("extract_params",
          [](std::complex<double> l0, std::complex<double> lp, std::complex<double> ap) {
            return extract_params(l0, lp, ap);
          });

  mod.def("space_dim",
          [](int n, int p) { return space_basis(n, p).real_dim(); });
  mod.def("lambda_rank_info", [](int n, int p) {
    LambdaRankInfo info = lambda_rank(generic_lead(n), p);
    return py::make_tuple(info.dim_source, info.dim_target, info.rank);
  });

  mod.def("f_sigma", [](int n, double delta, double nu, double b0, double I, int sigma) {
    return f_sigma(make_model(n, delta, nu, b0), I, sigma);
  });
  mod.def("critical_points", &critical_points_py, py::arg("n"), py::arg("delta"),
          py::arg("nu"), py::arg("b0") = 1.0);
  mod.def("double_point_curve", &double_point_curve, py::arg("n"), py::arg("nu"),
          py::arg("sigma"), py::arg("b0") = 1.0);
  mod.def("classify_domain", [](int n, double delta, double nu, double b0) {
    return domain_name(classify_domain(make_model(n, delta, nu, b0)));
  }, py::arg("n"), py::arg("delta"), py::arg("nu"), py::arg("b0") = 1.0);
  mod.def("connection_curve", &connection_curve, py::arg("n"), py::arg("nu"),
          py::arg("b0") = 1.0);
  mod.def("critical_level_sets", &critical_level_sets_py, py::arg("n"), py::arg("delta"),
          py::arg("nu"), py::arg("b0") = 1.0, py::arg("cells") = 256);

  py::register_exception<parse_error>(mod, "ParseError");
  py::register_exception<degeneracy_error>(mod, "DegeneracyError");
  py::register_exception<structure_error>(mod, "StructureError");
}

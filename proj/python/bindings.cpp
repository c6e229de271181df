#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "conestab/errors.hpp"
#include "conestab/report.hpp"
#include "conestab/serialize.hpp"
#include "conestab/simons.hpp"
#include "conestab/stability.hpp"

namespace py = pybind11;
using namespace conestab;

namespace {

std::string dumps(const Json& j) { return j.dump(); }

ConeSolution cone_of(int k, int h, double tol) {
  ConeSolveOptions opt;
  opt.tol = tol;
  return solve_cross_section(k, h, opt);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lawson cone stability kernels; every function returns a JSON string";
  m.attr("__version__") = kVersion;
  static PyObject* error_type = py::exception<Error>(m, "ConestabError").release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object kind = py::str(std::string(to_string(e.kind())));
      py::object exc = py::handle(error_type)(py::str(e.what()));
      exc.attr("kind") = kind;
      exc.attr("exit_code") = exit_code(e.kind());
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def("solve", [](int k, int h, double tol, int samples) {
    ConeSolveOptions opt;
    opt.tol = tol;
    opt.samples = samples;
    return dumps(to_json(solve_cross_section(k, h, opt)));
  }, py::arg("k"), py::arg("h"), py::arg("tol") = 1e-10, py::arg("samples") = 4096);

  m.def("boundary_data", [](int k, int h) {
    return dumps(to_json(boundary_data(cone_of(k, h, 1e-10))));
  }, py::arg("k"), py::arg("h"));

  m.def("boundary_functional", [](const std::vector<std::string>& values, const std::string& H,
                                  const std::string& weight) {
    std::vector<Rational> q;
    for (const auto& v : values) q.push_back(parse_rational(v));
    return dumps(to_json(boundary_functional(parse_weight(weight), ExactSpectrum::from_values(q),
                                             parse_rational(H))));
  }, py::arg("values"), py::arg("H"), py::arg("weight") = "frobenius");

  m.def("stability", [](int k, int h, const std::string& weight, double tol, int grid) {
    StabilityOptions opt;
    opt.weight = parse_weight(weight);
    opt.tol = tol;
    opt.gridN = grid;
    return dumps(to_json(stability_verdict(cone_of(k, h, 1e-10), opt)));
  }, py::arg("k"), py::arg("h"), py::arg("weight") = "frobenius", py::arg("tol") = kMarginalTol,
     py::arg("grid") = 4096);

  m.def("certify", [](int k, int h, int quad) {
    return dumps(to_json(instability_certificate(cone_of(k, h, 1e-10), quad)));
  }, py::arg("k"), py::arg("h"), py::arg("quad") = 64);

  m.def("positive_solution", [](int k, int h) {
    return dumps(to_json(positive_solution(cone_of(k, h, 1e-10))));
  }, py::arg("k"), py::arg("h"));

  m.def("interior_check", [](int k, int h, const std::string& weight, int grid) {
    return dumps(to_json(interior_inequality_check(cone_of(k, h, 1e-10), parse_weight(weight), grid)));
  }, py::arg("k"), py::arg("h"), py::arg("weight") = "frobenius", py::arg("grid") = 2048);

  m.def("lstar", [](int n, double radius_max) { return dumps(to_json(lstar_optimize(n, radius_max))); },
        py::arg("n"), py::arg("radius_max") = 1048576.0);

  m.def("case_identity", []() { return dumps(to_json(case_identity_check())); });

  m.def("euler_zeros", [](double alpha, double beta) {
    const auto z = euler_zeros(alpha, beta);
    Json j{{"oscillates", z.oscillates}};
    j["spacing"] = z.spacing ? number(*z.spacing) : Json(nullptr);
    j["numeric_spacing"] = z.numeric_spacing ? number(*z.numeric_spacing) : Json(nullptr);
    return dumps(j);
  }, py::arg("alpha"), py::arg("beta"));

  m.def("harmonic_dimension", &harmonic_dimension, py::arg("n"), py::arg("d"));

  m.def("verify_simons", [](int n, int degree, const std::string& weight, int points,
                            std::uint64_t seed) {
    const auto poly = random_harmonic_poly(n, degree, seed);
    return dumps(to_json(verify_general_inequality(poly, parse_weight(weight), points, seed)));
  }, py::arg("n"), py::arg("degree"), py::arg("weight") = "frobenius", py::arg("points") = 50,
     py::arg("seed") = 1);

  m.def("scan", [](int n, const std::string& weight, int jobs) {
    ScanOptions opt;
    opt.n = n;
    opt.jobs = jobs;
    opt.stability.weight = parse_weight(weight);
    py::gil_scoped_release release;
    return dumps(to_json(scan(opt)));
  }, py::arg("n"), py::arg("weight") = "frobenius", py::arg("jobs") = 1);
}

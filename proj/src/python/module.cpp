// Thin bindings: structured results cross the boundary as JSON text and are
// decoded on the Python side.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "accinfo/cli.hpp"
#include "accinfo/inequalities.hpp"
#include "accinfo/io.hpp"
#include "accinfo/optimality.hpp"
#include "accinfo/oracle.hpp"
#include "accinfo/pyramids.hpp"

namespace py = pybind11;
using namespace accinfo;

namespace {

PyramidSpec make_spec(int m, std::optional<double> r0, std::optional<double> p, const std::string& orientation) {
  if (r0.has_value() == p.has_value()) throw std::invalid_argument("give exactly one of r0 and p");
  if (r0) return PyramidSpec(m, *r0);
  if (orientation != "acute" && orientation != "obtuse")
    throw std::invalid_argument("orientation must be 'acute' or 'obtuse'");
  return spec_from_p(m, *p, orientation == "acute" ? Orientation::acute : Orientation::obtuse);
}

PureStateEnsemble ensemble_from(const std::string& text) { return Json::parse(text).get<PureStateEnsemble>(); }

Point point_from(const std::vector<std::complex<double>>& z) {
  Point out(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) out(static_cast<Eigen::Index>(i)) = z[i];
  return out;
}

}  // namespace

PYBIND11_MODULE(_accinfo, m) {
  m.doc() = "Accessible information of pure-state ensembles and quantum pyramids";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NotACertificate& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    } catch (const Json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("pyramid_ensemble", [](int mm, std::optional<double> r0, std::optional<double> p, const std::string& o) {
    return Json(build_pyramid_ensemble(make_spec(mm, r0, p, o))).dump();
  }, py::arg("m"), py::arg("r0") = py::none(), py::arg("p") = py::none(), py::arg("orientation") = "acute");

  m.def("solve_pyramid", [](int mm, std::optional<double> r0, std::optional<double> p, const std::string& o) {
    return Json(solve_pyramid(make_spec(mm, r0, p, o))).dump();
  }, py::arg("m"), py::arg("r0") = py::none(), py::arg("p") = py::none(), py::arg("orientation") = "acute");

  m.def("tau_obtuse", [](int mm) { return tau_obtuse(mm); }, py::arg("m"));
  m.def("tau_acute", &tau_acute, py::arg("m"));

  m.def("verify_pyramid", [](int mm, double r0, std::size_t samples, std::uint64_t seed) {
    const PyramidSpec spec(mm, r0);
    IiaBudget budget;
    budget.samples = samples;
    budget.seed = seed;
    return Json(verify_optimality(build_pyramid_ensemble(spec), conjectured_observable(spec).povm, budget)).dump();
  }, py::arg("m"), py::arg("r0"), py::arg("samples") = 200000, py::arg("seed") = 1);

  m.def("verify", [](const std::string& ensemble, std::optional<std::string> observable, std::size_t samples,
                     std::uint64_t seed) {
    const auto ens = ensemble_from(ensemble);
    const Povm obs = observable ? Json::parse(*observable).get<Povm>() : dual_observable(ens);
    IiaBudget budget;
    budget.samples = samples;
    budget.seed = seed;
    return Json(verify_optimality(ens, obs, budget)).dump();
  }, py::arg("ensemble"), py::arg("observable") = py::none(), py::arg("samples") = 200000, py::arg("seed") = 1);

  m.def("maximize_info", [](const std::string& ensemble, std::size_t restarts, std::size_t max_iters,
                            std::uint64_t seed, unsigned threads) {
    AscentConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.seed = seed;
    cfg.threads = threads;
    py::gil_scoped_release release;
    return Json(maximize_info(ensemble_from(ensemble), cfg)).dump();
  }, py::arg("ensemble"), py::arg("restarts") = 32, py::arg("max_iters") = 2000, py::arg("seed") = 1,
     py::arg("threads") = 1);

  m.def("gap", [](const std::string& id, const std::vector<std::complex<double>>& point, const Params& params) {
    return gap(inequality_from_string(id), point_from(point), params);
  }, py::arg("id"), py::arg("point"), py::arg("params") = Params{});

  m.def("sample_gap", [](const std::string& id, const Params& params, std::size_t samples, std::uint64_t seed) {
    return Json(sample_gap(inequality_from_string(id), params, samples, seed)).dump();
  }, py::arg("id"), py::arg("params") = Params{}, py::arg("samples") = 100000, py::arg("seed") = 1);

  m.def("two_value_scan", [](const std::string& id, const Params& params, std::size_t grid) {
    return Json(two_value_scan(inequality_from_string(id), params, grid)).dump();
  }, py::arg("id"), py::arg("params"), py::arg("grid") = 2000);

  m.def("minimize_gap", [](const std::string& id, const Params& params) {
    return Json(minimize_gap(inequality_from_string(id), params)).dump();
  }, py::arg("id"), py::arg("params") = Params{});

  m.def("lemma_checks", [](int m_max, std::size_t points_per_unit) {
    LemmaGrid g;
    g.m_max = m_max;
    g.points_per_unit = points_per_unit;
    return Json(lemma_checks(g)).dump();
  }, py::arg("m_max") = 12, py::arg("points_per_unit") = 512);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spprt/calibration.hpp"
#include "spprt/cli_commands.hpp"
#include "spprt/design.hpp"
#include "spprt/errors.hpp"
#include "spprt/evaluator.hpp"
#include "spprt/fss.hpp"
#include "spprt/lr_model.hpp"
#include "spprt/plan_io.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

// Round-trip through the json module: keeps the binding surface small and
// the Python side gets plain dicts.
py::object to_py(const json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

json from_py(const py::object& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

spprt::Plan design_from(const py::object& config) { return spprt::niod(spprt::config_from_json(from_py(config))); }

spprt::OperatingPoint evaluate(const spprt::Plan& plan, double theta, const std::string& method,
                               std::optional<std::uint64_t> seed, long trials, int workers) {
  const auto& cost = plan.config().cost;
  switch (spprt::method_from_string(method)) {
    case spprt::Method::exact:
      return spprt::evaluate_exact(plan, theta, cost);
    case spprt::Method::grid:
      return spprt::evaluate_grid(plan, theta, cost);
    case spprt::Method::mc:
      if (!seed) throw spprt::ConfigError("mc evaluation needs a seed");
      return spprt::simulate(plan, theta, cost, {trials, *seed, workers});
  }
  throw spprt::ConfigError("unknown method");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cost-optimal truncated sequentially planned tests for Bernoulli data";

  py::register_exception<spprt::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<spprt::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<spprt::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  static py::exception<spprt::CalibrationFailed> calib_exc(m, "CalibrationFailed", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const spprt::CalibrationFailed& e) {
      py::set_error(calib_exc, e.what());
    }
  });

  py::class_<spprt::Hypotheses>(m, "Hypotheses")
      .def(py::init<double, double>(), py::arg("theta0"), py::arg("theta1"))
      .def_property_readonly("theta0", &spprt::Hypotheses::theta0)
      .def_property_readonly("theta1", &spprt::Hypotheses::theta1)
      .def_property_readonly("r", &spprt::Hypotheses::r)
      .def_property_readonly("q", &spprt::Hypotheses::q)
      .def("log_lr_factor", [](const spprt::Hypotheses& h, int size, int s) { return spprt::log_lr_factor(h, size, s); })
      .def("__repr__", [](const spprt::Hypotheses& h) {
        return "Hypotheses(" + std::to_string(h.theta0()) + ", " + std::to_string(h.theta1()) + ")";
      });

  m.def("binomial_pmf", &spprt::binomial_pmf, py::arg("m"), py::arg("theta"));

  py::class_<spprt::Plan>(m, "Plan")
      .def_static("design", &design_from, py::arg("config"), "Run backward induction on a config dict.")
      .def_static("from_dict", [](const py::object& d) { return spprt::plan_from_json(from_py(d)); })
      .def_static("load", [](const std::string& path) { return spprt::load_plan(path); })
      .def("save", [](const spprt::Plan& p, const std::string& path) { spprt::save_plan(p, path); })
      .def("to_dict", [](const spprt::Plan& p) { return to_py(spprt::plan_to_json(p)); })
      .def_property_readonly("effective_horizon", &spprt::Plan::effective_horizon)
      .def_property_readonly("first_group", &spprt::Plan::first_group)
      .def_property_readonly("threshold", &spprt::Plan::threshold)
      .def_property_readonly("early_exit", &spprt::Plan::early_exit)
      .def_property_readonly("warnings", &spprt::Plan::warnings)
      .def("interval",
           [](const spprt::Plan& p, int allowance) -> std::optional<std::pair<double, double>> {
             auto iv = p.interval(allowance);
             if (!iv) return std::nullopt;
             return std::make_pair(iv->a, iv->b);
           })
      .def("sampling_rule", &spprt::Plan::sampling_rule, py::arg("allowance"), py::arg("z"))
      .def("decide", &spprt::Plan::decide, py::arg("z"))
      .def(
          "next",
          [](const spprt::Plan& p, const std::string& history) {
            return to_py(spprt::cli::cmd_next(p, spprt::cli::parse_history(history)));
          },
          py::arg("history") = "");

  m.def(
      "evaluate",
      [](const spprt::Plan& plan, double theta, const std::string& method, std::optional<std::uint64_t> seed,
         long trials, int workers) {
        spprt::OperatingPoint pt;
        {
          py::gil_scoped_release release;
          pt = evaluate(plan, theta, method, seed, trials, workers);
        }
        return to_py(spprt::operating_point_to_json(pt));
      },
      py::arg("plan"), py::arg("theta"), py::arg("method") = "exact", py::arg("seed") = py::none(),
      py::arg("trials") = 100000, py::arg("workers") = 1);

  m.def(
      "profile",
      [](const spprt::Plan& plan, const std::string& method) {
        spprt::TestProfile prof;
        {
          py::gil_scoped_release release;
          prof = spprt::profile(plan, spprt::method_from_string(method));
        }
        return to_py(spprt::profile_to_json(prof));
      },
      py::arg("plan"), py::arg("method") = "exact");

  m.def(
      "calibrate",
      [](const py::object& spec_doc) {
        auto spec = spprt::calibration_spec_from_json(from_py(spec_doc));
        spprt::CalibrationResult res;
        {
          py::gil_scoped_release release;
          res = spprt::calibrate(spec);
        }
        py::dict out;
        out["lambda0"] = res.lambda0;
        out["lambda1"] = res.lambda1;
        out["objective"] = res.objective;
        out["iterations"] = res.iterations;
        out["evaluations"] = res.evaluations;
        out["converged"] = res.converged;
        out["profile"] = to_py(spprt::profile_to_json(res.profile));
        out["plan"] = res.plan ? py::cast(*res.plan) : py::none();
        return out;
      },
      py::arg("spec"));

  m.def(
      "np_min_sample_size",
      [](double theta0, double theta1, double alpha, double beta) {
        auto t = spprt::np_min_sample_size(spprt::Hypotheses(theta0, theta1), alpha, beta);
        py::dict out;
        out["n"] = t.n;
        out["threshold"] = t.threshold;
        out["reject_high"] = t.reject_high;
        out["alpha"] = t.achieved_alpha;
        out["beta"] = t.achieved_beta;
        return out;
      },
      py::arg("theta0"), py::arg("theta1"), py::arg("alpha"), py::arg("beta"));
}

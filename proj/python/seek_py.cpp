#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "seek/analysis.hpp"
#include "seek/commands.hpp"
#include "seek/config.hpp"
#include "seek/dither.hpp"
#include "seek/error.hpp"
#include "seek/field.hpp"

namespace py = pybind11;
using namespace seek;

namespace {

py::dict trajectory_dict(const Trajectory& tr) {
  const auto n = static_cast<py::ssize_t>(tr.samples.size());
  py::array_t<double> t(n), x(n), y(n), h(n), J(n), v(n);
  auto pt = t.mutable_unchecked<1>(), px = x.mutable_unchecked<1>(), py_ = y.mutable_unchecked<1>(),
       ph = h.mutable_unchecked<1>(), pJ = J.mutable_unchecked<1>(), pv = v.mutable_unchecked<1>();
  for (py::ssize_t i = 0; i < n; ++i) {
    const auto& s = tr.samples[static_cast<std::size_t>(i)];
    pt(i) = s.t;
    px(i) = s.x;
    py_(i) = s.y;
    ph(i) = s.h;
    pJ(i) = s.J;
    pv(i) = s.v;
  }
  py::dict d;
  d["t"] = t;
  d["x"] = x;
  d["y"] = y;
  d["h"] = h;
  d["J"] = J;
  d["v"] = v;
  d["aborted"] = tr.aborted;
  d["abort_reason"] = tr.abort_reason;
  d["design"] = tr.meta.design;
  d["field"] = tr.meta.field;
  return d;
}

Trajectory from_arrays(const py::array_t<double>& t, const py::array_t<double>& x, const py::array_t<double>& y) {
  if (t.size() != x.size() || t.size() != y.size()) throw ValidationError("trajectory", "t, x, y lengths differ");
  Trajectory tr;
  auto pt = t.unchecked<1>(), px = x.unchecked<1>(), py_ = y.unchecked<1>();
  for (py::ssize_t i = 0; i < t.size(); ++i) tr.samples.push_back({pt(i), px(i), py_(i), 0.0, 0.0, 0.0});
  return tr;
}

py::dict report_dict(const Report& r) {
  py::dict d;
  for (const auto& [k, v] : r) d[py::str(k)] = v;
  return d;
}

ScenarioConfig make_config(const std::string& preset, const std::map<std::string, std::string>& overrides) {
  KeyValues kv(overrides.begin(), overrides.end());
  kv.emplace("scenario.base", preset);
  return build_config(kv);
}

}  // namespace

PYBIND11_MODULE(_seek, m) {
  m.doc() = "Unicycle source seeking with Lie bracket extremum seeking control";

  auto base = py::register_exception<Error>(m, "SeekError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<TimestampMismatchError>(m, "TimestampMismatchError", base.ptr());

  py::class_<ScenarioConfig>(m, "Config")
      .def_readonly("name", &ScenarioConfig::name)
      .def_readonly("base", &ScenarioConfig::base)
      .def_readonly("sim_replay", &ScenarioConfig::sim_replay)
      .def_readonly("t_end", &ScenarioConfig::t_end)
      .def_readonly("h0", &ScenarioConfig::h0)
      .def_property_readonly("design", [](const ScenarioConfig& c) { return std::string(to_string(c.design)); })
      .def_property_readonly("field_kind", [](const ScenarioConfig& c) { return std::string(kind_name(c.field)); })
      .def_property_readonly("a", [](const ScenarioConfig& c) { return c.params.a; })
      .def_property_readonly("c", [](const ScenarioConfig& c) { return c.params.c; })
      .def_property_readonly("epsilon", [](const ScenarioConfig& c) { return c.params.epsilon; })
      .def_property_readonly("omega", [](const ScenarioConfig& c) { return c.params.omega; })
      .def_property_readonly("hpf_gain", [](const ScenarioConfig& c) { return c.params.hpf_gain; })
      .def_property_readonly("start", [](const ScenarioConfig& c) { return py::make_tuple(c.start.x, c.start.y); })
      .def_property_readonly("target", [](const ScenarioConfig& c) {
        const auto p = c.target();
        return py::make_tuple(p.x, p.y);
      })
      .def_property_readonly("dt", &ScenarioConfig::esc_dt)
      .def("to_text", [](const ScenarioConfig& c) { return to_text(c); })
      .def("__repr__", [](const ScenarioConfig& c) { return "<Config " + c.name + " (" + c.base + ")>"; });

  m.def("preset_names", &preset_names);
  m.def("preset_text", [](const std::string& name) { return std::string(preset_text(name)); });
  m.def("config", &make_config, py::arg("preset") = "table1",
        py::arg("overrides") = std::map<std::string, std::string>{},
        "Preset layered with dotted-key overrides, e.g. {'sim.t_end': '5'}.");
  m.def("config_from_text", [](const std::string& text) { return build_config(parse_key_values(text)); });
  m.def("load_config", &load_config_file, py::arg("path"));

  m.def("field_value", [](const ScenarioConfig& c, double x, double y) { return eval(c.field, x, y); });

  m.def(
      "simulate",
      [](const ScenarioConfig& c, bool with_lbs) {
        ScenarioResult r;
        {
          py::gil_scoped_release release;
          r = run_scenario(c, with_lbs);
        }
        py::dict d = trajectory_dict(r.esc);
        if (r.lbs) d["lbs"] = trajectory_dict(*r.lbs);
        d["summary"] = report_dict(summarize(c, r.esc));
        return d;
      },
      py::arg("config"), py::arg("with_lbs") = false);

  m.def("lbs", [](const ScenarioConfig& c) {
    Trajectory tr;
    {
      py::gil_scoped_release release;
      tr = run_lbs(c);
    }
    return trajectory_dict(tr);
  });

  m.def(
      "averaging_gap_sweep",
      [](const ScenarioConfig& c, int jobs) {
        std::vector<GapPoint> pts;
        {
          py::gil_scoped_release release;
          pts = averaging_gap_sweep(c, jobs);
        }
        py::list out;
        for (const auto& p : pts) out.append(py::make_tuple(p.epsilon, p.gap));
        return out;
      },
      py::arg("config"), py::arg("jobs") = 1);

  m.def("lbs_gains", [](double c, double a, double C1, double C2) {
    const auto g = lbs_gains(c, a, C1, C2);
    return py::make_tuple(g.c1, g.c2);
  });

  m.def("certify", [](double c1, double c2, double omega) {
    const auto cert = certify(c1, c2, omega);
    py::dict d;
    d["verdict"] = cert.verdict;
    d["omega_threshold"] = cert.omega_threshold ? py::cast(*cert.omega_threshold) : py::none();
    d["gamma_feasible"] = cert.gamma_feasible ? py::cast(*cert.gamma_feasible) : py::none();
    d["gamma_margin"] = cert.gamma_margin;
    d["condition_branch"] = std::string(to_string(cert.condition_branch));
    d["k11"] = cert.k11;
    d["k12"] = cert.k12;
    d["k2"] = cert.k2;
    return d;
  });

  m.def(
      "moment_check",
      [](const std::string& order, int kappa) {
        const auto r = moment_check({dither_order_from_string(order), kappa, 1.0});
        return py::make_tuple(r.m1, r.m2, r.lambda12);
      },
      py::arg("order"), py::arg("kappa") = 1);

  m.def(
      "fit_decay",
      [](const py::array_t<double>& t, const py::array_t<double>& x, const py::array_t<double>& y,
         std::pair<double, double> target, double t0, double t1, double period) {
        const auto fit = fit_decay(from_arrays(t, x, y), {target.first, target.second}, t0, t1, period);
        return py::make_tuple(fit.rate, fit.r_squared);
      },
      py::arg("t"), py::arg("x"), py::arg("y"), py::arg("target"), py::arg("t0"), py::arg("t1"),
      py::arg("period"));

  m.def(
      "convergence_time",
      [](const py::array_t<double>& t, const py::array_t<double>& x, const py::array_t<double>& y,
         std::pair<double, double> target, double radius) {
        return convergence_time(from_arrays(t, x, y), {target.first, target.second}, radius);
      },
      py::arg("t"), py::arg("x"), py::arg("y"), py::arg("target"), py::arg("radius"));

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "seek");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the `seek` command line in-process; returns (exit_code, stdout, stderr).");
}

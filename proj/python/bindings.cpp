#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "biofilm/config.hpp"
#include "biofilm/harness.hpp"
#include "biofilm/potential.hpp"
#include "biofilm/potential_checks.hpp"

namespace py = pybind11;
using namespace biofilm;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::dict state_dict(const State& s) {
  py::dict d;
  d["u"] = to_array(s.u);
  d["v"] = to_array(s.v);
  d["mu"] = to_array(s.mu);
  return d;
}

py::dict run_dict(const RunResult& r) {
  py::dict out;
  out["x"] = to_array(r.grid.centers());
  out["steps"] = r.steps;
  py::list snaps;
  for (const Snapshot& s : r.snapshots) {
    py::dict d = state_dict(s.state);
    d["requested_time"] = s.requested_time;
    d["time"] = s.time;
    d["step"] = s.step;
    snaps.append(d);
  }
  out["snapshots"] = snaps;
  std::vector<double> t, mu, mv, en, ent, minu, maxu, minv, maxv;
  std::vector<int> iters;
  for (const auto& rec : r.diagnostics) {
    t.push_back(rec.t);
    mu.push_back(rec.mass_u);
    mv.push_back(rec.mass_v);
    en.push_back(rec.energy);
    ent.push_back(rec.entropy);
    minu.push_back(rec.min_u);
    maxu.push_back(rec.max_u);
    minv.push_back(rec.min_v);
    maxv.push_back(rec.max_v);
    iters.push_back(rec.newton_iters);
  }
  py::dict diag;
  diag["t"] = to_array(t);
  diag["mass_u"] = to_array(mu);
  diag["mass_v"] = to_array(mv);
  diag["energy"] = to_array(en);
  diag["entropy"] = to_array(ent);
  diag["min_u"] = to_array(minu);
  diag["max_u"] = to_array(maxu);
  diag["min_v"] = to_array(minv);
  diag["max_v"] = to_array(maxv);
  diag["newton_iters"] = py::array_t<int>(static_cast<py::ssize_t>(iters.size()), iters.data());
  out["diagnostics"] = diag;
  out["final"] = state_dict(r.final_state);
  return out;
}

ResolvedConfig resolve(const py::dict& settings) {
  KeyValues kv;
  for (auto item : settings) {
    kv[py::str(item.first)] = py::str(item.second);
  }
  return resolve_config(kv);
}

}  // namespace

PYBIND11_MODULE(_biofilm, m) {
  m.doc() = "Finite-volume solver for a degenerate Cahn-Hilliard biofilm model";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<RunError>(m, "RunError", PyExc_RuntimeError);

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def_readwrite("D", &PhysicalParams::D)
      .def_readwrite("M_prime", &PhysicalParams::M_prime)
      .def_readwrite("R_c", &PhysicalParams::R_c)
      .def_readwrite("R_p", &PhysicalParams::R_p)
      .def_readwrite("K_v", &PhysicalParams::K_v)
      .def_readwrite("Gamma1", &PhysicalParams::Gamma1)
      .def_readwrite("Gamma2", &PhysicalParams::Gamma2)
      .def_readwrite("N", &PhysicalParams::N)
      .def_readwrite("lambda_", &PhysicalParams::lambda)
      .def_readwrite("x0", &PhysicalParams::x0)
      .def_readwrite("t0", &PhysicalParams::t0)
      .def_readwrite("v0", &PhysicalParams::v0)
      .def_readwrite("kBT", &PhysicalParams::kBT)
      .def_readwrite("K_tilde", &PhysicalParams::K_tilde);

  py::class_<ScaledParams>(m, "ScaledParams")
      .def_readwrite("D0", &ScaledParams::D0)
      .def_readwrite("M0", &ScaledParams::M0)
      .def_readwrite("Rc0", &ScaledParams::Rc0)
      .def_readwrite("Rp0", &ScaledParams::Rp0)
      .def_readwrite("K", &ScaledParams::K)
      .def_readwrite("Gamma1_0", &ScaledParams::Gamma1_0)
      .def_readwrite("Gamma2_0", &ScaledParams::Gamma2_0)
      .def_readwrite("N", &ScaledParams::N)
      .def_readwrite("lambda_", &ScaledParams::lambda)
      .def_readwrite("K_tilde", &ScaledParams::K_tilde);

  m.def("default_physical_params", &default_physical_params);
  m.def("default_scaled_params", &default_scaled_params);
  m.def("scale_parameters", &scale_parameters, py::arg("physical"));
  m.def("characteristic_potential", &characteristic_potential, py::arg("physical"));

  m.def("truncated_singular",
        py::vectorize([](double u, double N, double delta) {
          return truncated_singular(u, {N, 0.0, delta});
        }),
        py::arg("u"), py::arg("N") = 1.0, py::arg("delta") = 1e-8);
  m.def("truncated_singular_d2",
        py::vectorize([](double u, double N, double delta) {
          return truncated_singular_d2(u, {N, 0.0, delta});
        }),
        py::arg("u"), py::arg("N") = 1.0, py::arg("delta") = 1e-8);
  m.def("truncated_potential_d1",
        py::vectorize([](double u, double N, double lambda, double delta) {
          return truncated_potential_d1(u, {N, lambda, delta});
        }),
        py::arg("u"), py::arg("N") = 1.0, py::arg("lambda_") = 0.0, py::arg("delta") = 1e-8);
  m.def("mobility", py::vectorize([](double u) { return mobility(u); }), py::arg("u"));
  m.def("truncated_mobility",
        py::vectorize([](double u, double delta) { return truncated_mobility(u, delta); }),
        py::arg("u"), py::arg("delta"));
  m.def("truncated_entropy",
        py::vectorize([](double u, double delta) { return truncated_entropy(u, delta); }),
        py::arg("u"), py::arg("delta"));

  m.def(
      "check_potentials",
      [](std::vector<double> deltas, std::vector<double> N) {
        py::list out;
        for (const auto& c : check_potentials(deltas, N)) {
          out.append(py::make_tuple(c.name, c.worst, c.tolerance, c.passed));
        }
        return out;
      },
      py::arg("deltas") = std::vector<double>{1e-2, 1e-4, 1e-6},
      py::arg("N") = std::vector<double>{1.0, 1e3});

  m.def(
      "initial_data",
      [](int case_id, int n_cells) {
        const TestCase tc = test_case(case_id);
        const Grid grid(n_cells);
        std::vector<double> u, v;
        for (double x : grid.centers()) {
          u.push_back(tc.initial_u(x));
          v.push_back(tc.initial_v(x));
        }
        return py::make_tuple(to_array(grid.centers()), to_array(u), to_array(v));
      },
      py::arg("case_id"), py::arg("n_cells") = 128);

  m.def(
      "run",
      [](const py::dict& settings) {
        const ResolvedConfig cfg = resolve(settings);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(test_case(cfg.case_id), cfg.run);
        }
        return run_dict(r);
      },
      py::arg("settings") = py::dict(),
      "Run one test case. `settings` uses the configuration file keys.");

  m.def(
      "compare_models",
      [](const py::dict& settings) {
        const ResolvedConfig cfg = resolve(settings);
        ModelComparison c;
        {
          py::gil_scoped_release release;
          c = compare_models(test_case(cfg.case_id), cfg.run);
        }
        py::dict out;
        out["this_paper"] = run_dict(c.volume_filling);
        out["wang_zhang"] = run_dict(c.wang_zhang);
        out["times"] = to_array(c.times);
        out["l2_u"] = to_array(c.l2_u);
        out["l2_v"] = to_array(c.l2_v);
        return out;
      },
      py::arg("settings") = py::dict());

  m.def("observed_orders", &observed_orders, py::arg("errors"), py::arg("step_sizes"));
  m.def(
      "l2_distance",
      [](std::vector<double> a, std::vector<double> b, double dx) {
        return l2_distance(a, b, dx);
      },
      py::arg("a"), py::arg("b"), py::arg("dx"));
  m.def(
      "restrict_to",
      [](std::vector<double> fine, int coarse_cells) {
        return to_array(restrict_to(fine, coarse_cells));
      },
      py::arg("fine"), py::arg("coarse_cells"));
  m.def(
      "config_text", [](const py::dict& settings) { return to_config_text(resolve(settings)); },
      py::arg("settings") = py::dict());

  m.attr("__version__") = BIOFILM_VERSION;
}

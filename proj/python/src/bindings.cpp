#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scare/benchmarks.hpp"
#include "scare/care_sda.hpp"
#include "scare/config.hpp"
#include "scare/errors.hpp"
#include "scare/io.hpp"
#include "scare/lyap_sda.hpp"
#include "scare/moebius.hpp"
#include "scare/oracle.hpp"
#include "scare/problem.hpp"
#include "scare/solvers.hpp"

namespace py = pybind11;
using namespace scare;

namespace {

SolveReport run(const ScareProblem& p, const std::string& solver,
                const std::optional<Matrix>& x0, const std::optional<SolverConfig>& cfg) {
  const SolverConfig c = cfg.value_or(SolverConfig{});
  c.check();
  SolverConfig start = c;
  if (x0) start.x0_policy = X0Policy::Given;
  const SymMatrix init = initial_iterate(p, start, x0);
  py::gil_scoped_release release;
  return solve(p, parse_solver(solver), init, c);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stochastic CARE solvers";

  // messages read "<Code>: detail"
  py::register_exception<ScareError>(m, "ScareError", PyExc_RuntimeError);

  py::class_<ScareProblem>(m, "Problem")
      .def(py::init([](Matrix a, Matrix b, Matrix q, Matrix r, std::optional<Matrix> l,
                       std::vector<Matrix> a0, std::vector<Matrix> b0) {
             ScareProblem p = make_problem(std::move(a), std::move(b), std::move(q), std::move(r),
                                           l.value_or(Matrix{}), std::move(a0), std::move(b0));
             validate(p);
             return p;
           }),
           py::arg("A"), py::arg("B"), py::arg("Q"), py::arg("R"), py::arg("L") = py::none(),
           py::arg("A0") = std::vector<Matrix>{}, py::arg("B0") = std::vector<Matrix>{})
      .def_readonly("A", &ScareProblem::a)
      .def_readonly("B", &ScareProblem::b)
      .def_readonly("Q", &ScareProblem::q)
      .def_readonly("R", &ScareProblem::r)
      .def_readonly("L", &ScareProblem::l)
      .def_readonly("A0", &ScareProblem::a0)
      .def_readonly("B0", &ScareProblem::b0)
      .def_property_readonly("n", &ScareProblem::n)
      .def_property_readonly("m", &ScareProblem::m)
      .def_property_readonly("r", &ScareProblem::noise_count)
      .def("to_json", [](const ScareProblem& p) { return problem_to_json(p); });

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("outer_tol", &SolverConfig::outer_tol)
      .def_readwrite("inner_tol", &SolverConfig::inner_tol)
      .def_readwrite("max_outer", &SolverConfig::max_outer)
      .def_readwrite("max_inner", &SolverConfig::max_inner)
      .def_readwrite("max_doubling", &SolverConfig::max_doubling)
      .def_readwrite("max_fp_iter", &SolverConfig::max_fp_iter)
      .def_readwrite("warm_threshold", &SolverConfig::warm_threshold)
      .def_readwrite("warm_relative", &SolverConfig::warm_relative)
      .def_readwrite("gamma", &SolverConfig::gamma)
      .def_readwrite("alpha", &SolverConfig::alpha)
      .def_readwrite("record_iterates", &SolverConfig::record_iterates);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("x", &SolveReport::x)
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("iterates", &SolveReport::iterates)
      .def_property_readonly("final_nres", &SolveReport::final_nres)
      .def_property_readonly("wall_ns", [](const SolveReport& r) { return r.wall_ns; })
      .def_property_readonly("monotone",
                             [](const SolveReport& r) { return std::string(to_string(r.monotone_direction)); })
      .def_property_readonly("history",
                             [](const SolveReport& r) {
                               py::list out;
                               for (const HistoryEntry& h : r.history)
                                 out.append(py::make_tuple(h.iter, std::string(to_string(h.phase)),
                                                           h.nres, h.wall_ns));
                               return out;
                             })
      .def_property_readonly("counts", [](const SolveReport& r) {
        py::dict d;
        d["care_solves"] = r.counts.care_solves;
        d["lyap_solves"] = r.counts.lyap_solves;
        d["newton_steps"] = r.counts.newton_steps;
        d["fp_iterations"] = r.counts.fp_iterations;
        return d;
      });

  m.def("solve", &run, py::arg("problem"), py::arg("solver") = "fpc",
        py::arg("x0") = py::none(), py::arg("config") = py::none(),
        "Solve with fpc, nt, mnt, fpc-nt, fpc-mnt or gl-fp.");
  m.def("benchmark",
        [](const std::string& id, std::uint64_t seed) { return make_benchmark(parse_benchmark(id, seed)); },
        py::arg("id"), py::arg("seed") = kDefaultNoiseSeed);
  m.def("read_problem", &read_problem, py::arg("path"));
  m.def("parse_problem", &parse_problem, py::arg("text"));

  m.def("residual", &residual, py::arg("problem"), py::arg("x"));
  m.def("nres", &nres, py::arg("problem"), py::arg("x"));
  m.def("feedback_gain", &feedback_gain, py::arg("problem"), py::arg("x"));
  m.def("mean_square_stable", &mean_square_stable, py::arg("problem"), py::arg("f"),
        py::arg("stab_tol") = 1e-10);
  m.def("rlinear_rate", [](const ScareProblem& p, const Matrix& x) {
    const RateCertificate c = rlinear_rate(p, x);
    return py::make_tuple(c.rho, c.rho_full);
  });
  m.def("scalar_scare_solve", &scalar_scare_solve, py::arg("problem"));

  m.def("solve_care",
        [](const Matrix& a, const Matrix& g, const Matrix& h) { return solve_care(a, g, h).x; },
        py::arg("A"), py::arg("G"), py::arg("H"), "Stabilizing solution of AᵀX + XA − XGX + H = 0.");
  m.def("solve_lyapunov",
        [](const Matrix& e, const Matrix& c, std::optional<double> alpha) {
          return solve_lyapunov(e, c, alpha);
        },
        py::arg("E"), py::arg("C"), py::arg("alpha") = py::none(), "Solution of EᵀY + YE + C = 0.");
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>

#include "unilab/analysis.hpp"
#include "unilab/chain.hpp"
#include "unilab/fitness.hpp"
#include "unilab/montecarlo.hpp"
#include "unilab/rational.hpp"

namespace py = pybind11;
using namespace unilab;

namespace {

py::object to_fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(to_fraction_string(r));
}

Rational rate_from_text(const std::string& text) { return parse_rate(text).exact; }

Acceptance mode_from_text(const std::string& mode) {
  if (mode == "elitist-ge") return Acceptance::kElitistGE;
  if (mode == "always-accept") return Acceptance::kAlwaysAccept;
  throw std::invalid_argument("mode must be 'elitist-ge' or 'always-accept'");
}

}  // namespace

PYBIND11_MODULE(_unilab, m) {
  m.doc() = "Exact (1+1) EA runtime analysis on functions of unitation";

  py::class_<UnitationFitness>(m, "UnitationFitness")
      .def_readonly("n", &UnitationFitness::n)
      .def_readonly("values", &UnitationFitness::values)
      .def_readonly("optimum_level", &UnitationFitness::optimum_level)
      .def_readonly("label", &UnitationFitness::label)
      .def("__repr__",
           [](const UnitationFitness& f) { return "<UnitationFitness " + f.label + ">"; });

  py::class_<SteppingStoneProfile>(m, "SteppingStoneProfile")
      .def_property_readonly("p", [](const SteppingStoneProfile& p) { return to_double(p.p); })
      .def_property_readonly("p_exact",
                             [](const SteppingStoneProfile& p) { return to_fraction(p.p); })
      .def_readonly("n", &SteppingStoneProfile::n)
      .def_readonly("levels", &SteppingStoneProfile::levels)
      .def_readonly("N", &SteppingStoneProfile::num_stones)
      .def("__repr__", [](const SteppingStoneProfile& p) {
        std::string out = "<SteppingStoneProfile p=" + to_fraction_string(p.p) + " levels=[";
        for (std::size_t i = 0; i < p.levels.size(); ++i)
          out += (i ? "," : "") + std::to_string(p.levels[i]);
        return out + "]>";
      });

  py::class_<OptRateResult>(m, "OptRateResult")
      .def_readonly("q_star", &OptRateResult::q_star)
      .def_readonly("t_star", &OptRateResult::t_star)
      .def_readonly("bracket_lo", &OptRateResult::bracket_lo)
      .def_readonly("bracket_hi", &OptRateResult::bracket_hi)
      .def_readonly("refinement_iterations", &OptRateResult::refinement_iterations)
      .def_readonly("boundary_flag", &OptRateResult::boundary_flag)
      .def("__repr__", [](const OptRateResult& r) {
        return "<OptRateResult q_star=" + std::to_string(r.q_star) + ">";
      });

  py::class_<TrajectoryStats>(m, "TrajectoryStats")
      .def_readonly("runs", &TrajectoryStats::runs)
      .def_readonly("hits", &TrajectoryStats::hits)
      .def_readonly("censored", &TrajectoryStats::censored)
      .def_readonly("mean_steps", &TrajectoryStats::mean_steps)
      .def_readonly("standard_error", &TrajectoryStats::standard_error)
      .def_readonly("se_valid", &TrajectoryStats::se_valid)
      .def_readonly("estimate_available", &TrajectoryStats::estimate_available)
      .def_readonly("cap", &TrajectoryStats::cap)
      .def_readonly("seed", &TrajectoryStats::seed);

  py::class_<LemmaCheck>(m, "LemmaCheck")
      .def_readonly("id", &LemmaCheck::id)
      .def_readonly("passed", &LemmaCheck::pass)
      .def_readonly("worst_margin", &LemmaCheck::worst_margin)
      .def_readonly("worst_point", &LemmaCheck::worst_point)
      .def_readonly("note", &LemmaCheck::note);

  m.def("closed_form_s", &closed_form_s, py::arg("p"), py::arg("k"),
        "k-th iterate of f_p starting from 1: (1-2p)^k / 2 + 1/2");
  m.def("alpha", &alpha, py::arg("p"), "1 / (p^p (1-p)^(1-p))");

  m.def(
      "build_dss",
      [](const std::string& p, int n) { return build_dss(rate_from_text(p), n); },
      py::arg("p"), py::arg("n"),
      "DistantSteppingStones for an exact rate given as '3/10' or '0.3'");
  m.def(
      "build_dss", [](double p, int n) { return build_dss(p, n); }, py::arg("p"), py::arg("n"));
  m.def("onemax", &build_onemax, py::arg("n"));
  m.def("needle", &build_needle, py::arg("n"));
  m.def("jump", &build_jump, py::arg("n"), py::arg("m"));

  m.def(
      "transition_pmf",
      [](int n, int i, double q) { return transition_pmf(n, i, q); }, py::arg("n"),
      py::arg("i"), py::arg("q"), "offspring-unitation law for a parent at level i");
  m.def(
      "transition_pmf_exact",
      [](int n, int i, const std::string& q) {
        const auto row = transition_pmf(n, i, rate_from_text(q));
        py::list out;
        for (const auto& v : row) out.append(to_fraction(v));
        return out;
      },
      py::arg("n"), py::arg("i"), py::arg("q"));

  m.def(
      "expected_runtime",
      [](const UnitationFitness& f, double q, const std::string& mode) {
        const auto chain = build_ea_chain(f, q, mode_from_text(mode));
        return expected_hitting_time(chain, binomial_half_start(f.n));
      },
      py::arg("fitness"), py::arg("q"), py::arg("mode") = "elitist-ge",
      "E[steps to the optimum] from a uniform random start (float backend)");
  m.def(
      "expected_runtime_exact",
      [](const UnitationFitness& f, const std::string& q, const std::string& mode) {
        const auto chain = build_ea_chain(f, rate_from_text(q), mode_from_text(mode));
        return to_fraction(expected_hitting_time(chain, binomial_half_start_exact(f.n)));
      },
      py::arg("fitness"), py::arg("q"), py::arg("mode") = "elitist-ge",
      "exact rational E[steps to the optimum]; q as '1/2' or '0.3'");

  m.def(
      "one_step_optimum_prob",
      [](int n, int level, double q) {
        if (level < 0 || level > n) throw std::invalid_argument("level out of range");
        return std::pow(q, n - level) * std::pow(1.0 - q, level);
      },
      py::arg("n"), py::arg("level"), py::arg("q"), "q^(n-level) (1-q)^level");

  m.def(
      "needle_closed_form", [](int n, double q) { return needle_closed_form(n, q); },
      py::arg("n"), py::arg("q"));
  m.def(
      "needle_closed_form_exact",
      [](int n, const std::string& q) {
        return to_fraction(needle_closed_form(n, rate_from_text(q)));
      },
      py::arg("n"), py::arg("q"));

  m.def(
      "runtime_curve",
      [](const UnitationFitness& f, const std::vector<double>& grid) {
        return runtime_curve(f, grid).values;
      },
      py::arg("fitness"), py::arg("q_grid"), "E[T(q)] per grid point (float backend)");

  m.def(
      "optimal_rate",
      [](const UnitationFitness& f, double q_min, double q_max, int coarse_points, double tol) {
        SearchOptions so;
        so.q_min = q_min;
        so.q_max = q_max;
        so.coarse_points = coarse_points;
        so.tol = tol;
        return optimal_rate(f, so);
      },
      py::arg("fitness"), py::arg("q_min") = 1e-3, py::arg("q_max") = 1.0 - 1e-3,
      py::arg("coarse_points") = 256, py::arg("tol") = 1e-4);

  m.def(
      "convergence_study",
      [](const std::string& p, const std::vector<int>& n_list, double q_min, double q_max,
         int coarse_points, double tol) {
        SearchOptions so;
        so.q_min = q_min;
        so.q_max = q_max;
        so.coarse_points = coarse_points;
        so.tol = tol;
        const auto report = convergence_study(rate_from_text(p), n_list, so);
        py::list rows;
        for (const auto& row : report.rows) {
          py::dict d;
          d["n"] = row.n;
          d["ok"] = row.ok;
          if (row.ok) {
            d["q_star"] = row.result.q_star;
            d["t_star"] = row.result.t_star;
            d["normalized"] = row.normalized;
            d["boundary_flag"] = row.result.boundary_flag;
          } else {
            d["error"] = row.error;
          }
          rows.append(std::move(d));
        }
        return rows;
      },
      py::arg("p"), py::arg("n_list"), py::arg("q_min") = 1e-3, py::arg("q_max") = 1.0 - 1e-3,
      py::arg("coarse_points") = 256, py::arg("tol") = 1e-4);

  m.def(
      "stone_step_probability",
      [](const SteppingStoneProfile& prof, int k, const std::string& q) {
        return to_fraction(stone_step_probability(prof, k, rate_from_text(q)));
      },
      py::arg("profile"), py::arg("k"), py::arg("q"),
      "exact kernel probability of the one-step move from stone k to stone k-1");
  m.def(
      "stone_step_probability",
      [](const SteppingStoneProfile& prof, int k, double q) {
        return stone_step_probability(prof, k, q);
      },
      py::arg("profile"), py::arg("k"), py::arg("q"));
  m.def(
      "stone_step_pattern_probability",
      [](const SteppingStoneProfile& prof, int k, const std::string& q) {
        return to_fraction(stone_step_pattern_probability(prof, k, rate_from_text(q)));
      },
      py::arg("profile"), py::arg("k"), py::arg("q"),
      "probability of the canonical sufficient flip pattern for the same move");
  m.def(
      "stone_step_pattern_probability",
      [](const SteppingStoneProfile& prof, int k, double q) {
        return stone_step_pattern_probability(prof, k, q);
      },
      py::arg("profile"), py::arg("k"), py::arg("q"));

  m.def("always_accept_stone_hitting_time", &always_accept_stone_hitting_time,
        py::arg("fitness"), py::arg("profile"), py::arg("q"),
        "expected steps for the always-accept chain to reach any stone");

  m.def(
      "run_trajectory",
      [](const UnitationFitness& f, double q, std::uint64_t seed, std::uint64_t cap,
         std::uint64_t run_index) {
        const auto res = run_trajectory(f, q, seed, cap, run_index);
        return py::make_tuple(res.steps, res.hit);
      },
      py::arg("fitness"), py::arg("q"), py::arg("seed"), py::arg("cap") = 1000000,
      py::arg("run_index") = 0, "(steps, hit) for one bitstring-level run");
  m.def("estimate_runtime", &estimate_runtime, py::arg("fitness"), py::arg("q"),
        py::arg("runs"), py::arg("cap") = 1000000, py::arg("seed") = 0);

  m.def("verify_analytic_lemmas", &verify_analytic_lemmas, py::arg("grid_density") = 1000);

  py::register_exception<construction_error>(m, "ConstructionError", PyExc_ValueError);
  py::register_exception<singular_system_error>(m, "SingularSystemError", PyExc_ArithmeticError);
  py::register_exception<no_minimum_error>(m, "NoMinimumError", PyExc_ArithmeticError);

  m.attr("__version__") = "0.1.0";
}

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "spca/datagen.hpp"
#include "spca/experiment.hpp"
#include "spca/metrics.hpp"
#include "spca/solver.hpp"
#include "spca/subproblem.hpp"
#include "spca/types.hpp"

namespace py = pybind11;
using namespace py::literals;

namespace {

spca::Norm parse_norm(const std::string& norm) {
  if (norm == "l0") return spca::Norm::kL0;
  if (norm == "l1") return spca::Norm::kL1;
  throw spca::InvalidInputError("norm must be 'l0' or 'l1', got '" + norm + "'");
}

std::vector<spca::SparsityBudget> build_budgets(const std::vector<double>& budgets,
                                                const std::string& norm, bool nonnegative) {
  const spca::Norm parsed = parse_norm(norm);
  std::vector<spca::SparsityBudget> out;
  out.reserve(budgets.size());
  for (const double t : budgets) out.push_back({parsed, t, nonnegative});
  return out;
}

spca::Matrix planted_toy_loadings(bool nonneg) {
  const spca::ToySpec toy = nonneg ? spca::toy_spec_nonneg() : spca::toy_spec_signed();
  spca::Matrix truth(static_cast<spca::Index>(toy.eigenvalues.size()), 2);
  for (const auto& [slot, vec] : toy.fixed_vectors) {
    if (slot < 2) truth.col(slot) = vec;
  }
  return truth;
}

}  // namespace

PYBIND11_MODULE(_spca, m) {
  m.doc() = "Sparse principal components via alternating thresholded updates";
  m.attr("__version__") = spca::kVersion;

  const auto base = py::register_exception<spca::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<spca::InvalidInputError>(m, "InvalidInputError", base.ptr());
  py::register_exception<spca::InfeasibleBudgetError>(m, "InfeasibleBudgetError", base.ptr());
  py::register_exception<spca::DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<spca::NoPositiveEntryError>(m, "NoPositiveEntryError", base.ptr());
  py::register_exception<spca::SingularProjectionError>(m, "SingularProjectionError", base.ptr());
  py::register_exception<spca::IoError>(m, "IoError", base.ptr());

  py::class_<spca::ThresholdSolution>(m, "ThresholdSolution",
                                      "Single-loading solution: unit vector, threshold, support")
      .def_readonly("v", &spca::ThresholdSolution::v)
      .def_readonly("lam", &spca::ThresholdSolution::lambda)
      .def_readonly("support", &spca::ThresholdSolution::support);

  py::class_<spca::FactorPair>(m, "FactorPair", "Score matrix U (n x r) and loadings V (d x r)")
      .def_readonly("scores", &spca::FactorPair::scores)
      .def_readonly("loadings", &spca::FactorPair::loadings);

  py::class_<spca::SolverReport>(m, "SolverReport")
      .def_readonly("objectives", &spca::SolverReport::objectives)
      .def_readonly("sweeps_run", &spca::SolverReport::sweeps_run)
      .def_readonly("elapsed_seconds", &spca::SolverReport::elapsed_seconds)
      .def_property_readonly("termination", [](const spca::SolverReport& r) {
        return r.termination == spca::Termination::kConverged ? "converged" : "max_sweeps";
      });

  py::class_<spca::FitResult>(m, "FitResult")
      .def_readonly("factors", &spca::FitResult::factors)
      .def_readonly("report", &spca::FitResult::report);

  py::class_<spca::EvalResult>(m, "EvalResult")
      .def_readonly("rre", &spca::EvalResult::rre)
      .def_readonly("pev", &spca::EvalResult::pev)
      .def_readonly("cardinalities", &spca::EvalResult::per_component_cardinality);

  m.def(
      "center_columns",
      [](const spca::Matrix& raw) { return spca::center_columns(raw).values; }, "x"_a,
      "Subtract each column's mean.");

  m.def(
      "fit",
      [](const spca::Matrix& x, spca::Index r, const std::vector<double>& budgets,
         const std::string& norm, bool nonnegative, double tol, int max_sweeps,
         int refresh_period, std::uint64_t seed, bool center) {
        spca::SolverConfig cfg;
        cfg.tol = tol;
        cfg.max_sweeps = max_sweeps;
        cfg.refresh_period = refresh_period;
        cfg.seed = seed;
        const spca::DataMatrix data = center ? spca::center_columns(x) : spca::DataMatrix{x};
        return spca::fit(data, r, build_budgets(budgets, norm, nonnegative), cfg);
      },
      "x"_a, "r"_a, "budgets"_a, "norm"_a = "l0", "nonnegative"_a = false, "tol"_a = 1e-6,
      "max_sweeps"_a = 200, "refresh_period"_a = 50, "seed"_a = 0, "center"_a = true,
      "Fit r sparse components; budgets is one per-component bound.");

  m.def("solve_l0", &spca::solve_l0, "w"_a, "t"_a,
        "Best unit vector with at most floor(t) nonzeros.");
  m.def("solve_l1", &spca::solve_l1, "w"_a, "t"_a, "Best unit vector with ||v||_1 <= t.");
  m.def(
      "solve_nonneg",
      [](const spca::Vector& w, double t, const std::string& norm) {
        return spca::solve_nonneg(w, {parse_norm(norm), t, true});
      },
      "w"_a, "t"_a, "norm"_a = "l0", "Nonnegative variant of the single-loading problem.");

  m.def(
      "evaluate",
      [](const spca::Matrix& x, const spca::Matrix& v) {
        return spca::evaluate(spca::DataMatrix{x}, v);
      },
      "x"_a, "v"_a, "Reconstruction error, explained variance, and cardinalities.");
  m.def(
      "rre", [](const spca::Matrix& x, const spca::Matrix& v) { return spca::rre(spca::DataMatrix{x}, v); },
      "x"_a, "v"_a);
  m.def(
      "pev", [](const spca::Matrix& x, const spca::Matrix& v) { return spca::pev(spca::DataMatrix{x}, v); },
      "x"_a, "v"_a);
  m.def("success_recovery", &spca::success_recovery, "v_hat"_a, "v_true"_a, "threshold"_a = 0.99,
        "True when both loadings align with the planted pair.");

  m.def(
      "gen_hastie",
      [](spca::Index n, std::uint64_t seed) {
        spca::HastieSample s = spca::gen_hastie(n, seed);
        return py::make_tuple(s.x.values, s.truth_supports);
      },
      "n"_a, "seed"_a, "Three-factor block design; returns (X, truth_supports).");
  m.def(
      "gen_toy",
      [](spca::Index n, std::uint64_t sample_seed, std::uint64_t basis_seed, bool nonneg) {
        spca::ToySpec toy = nonneg ? spca::toy_spec_nonneg() : spca::toy_spec_signed();
        toy.seed = basis_seed;
        return spca::sample_gaussian(toy, n, sample_seed).values;
      },
      "n"_a, "sample_seed"_a, "basis_seed"_a = 0, "nonneg"_a = false,
      "Gaussian draws from the planted covariance model.");
  m.def("toy_loadings", &planted_toy_loadings, "nonneg"_a = false,
        "The two planted unit loadings as a d x 2 matrix.");
  m.def(
      "design_from_covariance",
      [](const spca::Matrix& sigma, spca::Index n) {
        return spca::design_from_covariance(sigma, n).values;
      },
      "sigma"_a, "n"_a, "Deterministic n x d matrix whose sample covariance equals sigma.");
  m.def("replicate_seed", &spca::replicate_seed, "seed"_a, "sample_size"_a, "replicate"_a,
        "Seed mixing used by the experiment runner.");
}

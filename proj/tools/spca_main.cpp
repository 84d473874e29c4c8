#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spca/datagen.hpp"
#include "spca/experiment.hpp"
#include "spca/io.hpp"
#include "spca/metrics.hpp"
#include "spca/solver.hpp"
#include "spca/verify.hpp"

namespace {

using spca::DataMatrix;
using spca::Index;
using spca::Matrix;
using spca::Norm;
using spca::SparsityBudget;

// Argument-level mistakes that should exit with the usage code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FitArgs {
  std::string matrix_path;
  Index r = 0;
  std::string norm = "l0";
  std::vector<double> budgets;
  double tol = 1e-6;
  int max_sweeps = 200;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  bool nonneg = false;
  bool standardize = false;
  bool no_center = false;
};

struct GenArgs {
  std::string kind;
  Index n = 0;
  std::uint64_t seed = 0;
  std::string out_path;
};

struct VerifyArgs {
  int cases = 1000;
  Index dim_max = 10;
  std::uint64_t seed = 7;
};

std::string support_text(const spca::Vector& v) {
  std::string out = "{";
  bool first = true;
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    if (!first) out += ',';
    out += std::to_string(i + 1);  // 1-based for reading alongside the data
    first = false;
  }
  out += '}';
  return out;
}

std::vector<SparsityBudget> build_budgets(const FitArgs& args) {
  if (static_cast<Index>(args.budgets.size()) != args.r) {
    throw UsageError("--budgets needs exactly " + std::to_string(args.r) + " values, got " +
                     std::to_string(args.budgets.size()));
  }
  const Norm norm = args.norm == "l1" ? Norm::kL1 : Norm::kL0;
  std::vector<SparsityBudget> budgets;
  budgets.reserve(args.budgets.size());
  for (const double t : args.budgets) budgets.push_back({norm, t, args.nonneg});
  return budgets;
}

int run_fit(const FitArgs& args) {
  const auto budgets = build_budgets(args);
  spca::SolverConfig cfg;
  cfg.tol = args.tol;
  cfg.max_sweeps = args.max_sweeps;
  cfg.seed = args.seed;
  try {
    spca::validate_config(cfg);
    for (const SparsityBudget& b : budgets) {
      if (!(b.t >= 1.0)) {
        throw spca::InfeasibleBudgetError("budget " + spca::format_double(b.t) +
                                          " is below the minimum of 1");
      }
    }
  } catch (const spca::InfeasibleBudgetError&) {
    throw;
  } catch (const spca::Error& e) {
    throw UsageError(e.what());
  }

  DataMatrix x;
  if (args.no_center) {
    x.values = spca::read_matrix(args.matrix_path);
  } else {
    x = spca::center_columns(spca::read_matrix(args.matrix_path));
  }
  if (args.standardize) x = spca::standardize_columns(x);

  const spca::FitResult result = spca::fit(x, args.r, budgets, cfg);
  const spca::EvalResult eval = spca::evaluate(x, result.factors.loadings);

  std::ostringstream text;
  text << "rre: " << spca::format_double(eval.rre) << '\n';
  text << "pev: " << spca::format_double(eval.pev) << '\n';
  for (Index k = 0; k < args.r; ++k) {
    text << "component " << (k + 1) << ": cardinality "
         << eval.per_component_cardinality[static_cast<std::size_t>(k)] << ", support "
         << support_text(result.factors.loadings.col(k)) << '\n';
  }
  text << "sweeps: " << result.report.sweeps_run << " ("
       << (result.report.termination == spca::Termination::kConverged ? "converged"
                                                                      : "max_sweeps")
       << ")\n";
  std::cout << text.str();

  const std::filesystem::path out_dir(args.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw spca::IoError(out_dir.string() + ": cannot create output directory (" + ec.message() +
                        ")");
  }
  spca::write_matrix(out_dir / "V.csv", result.factors.loadings);
  spca::write_matrix(out_dir / "U.csv", result.factors.scores);

  nlohmann::json report;
  report["version"] = spca::kVersion;
  report["rre"] = eval.rre;
  report["pev"] = eval.pev;
  report["cardinalities"] = eval.per_component_cardinality;
  {
    nlohmann::json supports = nlohmann::json::array();
    for (Index k = 0; k < args.r; ++k) {
      std::vector<Index> one_based;
      const auto& v = result.factors.loadings.col(k);
      for (Index i = 0; i < v.size(); ++i) {
        if (v[i] != 0.0) one_based.push_back(i + 1);
      }
      supports.push_back(one_based);
    }
    report["supports"] = supports;
  }
  report["sweeps_run"] = result.report.sweeps_run;
  report["termination"] =
      result.report.termination == spca::Termination::kConverged ? "converged" : "max_sweeps";
  report["objectives"] = result.report.objectives;
  report["elapsed_seconds"] = result.report.elapsed_seconds;
  spca::write_text_file(out_dir / "report.json", report.dump(2) + "\n");

  std::cout << "wrote " << (out_dir / "V.csv").string() << '\n'
            << "wrote " << (out_dir / "U.csv").string() << '\n'
            << "wrote " << (out_dir / "report.json").string() << '\n';
  return 0;
}

int run_experiment_cmd(const std::string& spec_path) {
  const spca::ExperimentSpec spec =
      spca::parse_experiment_spec(spca::read_text_file(spec_path));
  const spca::ExperimentResult result = spca::run_experiment(spec);
  std::cout << spca::read_text_file(result.summary_path);
  std::cout << "wrote " << result.summary_path.string() << '\n'
            << "wrote " << result.detail_path.string() << '\n'
            << "wrote " << result.manifest_path.string() << '\n';
  return 0;
}

int run_verify(const VerifyArgs& args) {
  const auto suites = spca::run_verification(args.cases, args.dim_max, args.seed);
  bool all_passed = true;
  for (const auto& suite : suites) {
    std::cout << suite.name << ": " << suite.cases << " cases, max objective gap "
              << spca::format_double(suite.max_objective_gap) << ", "
              << (suite.passed() ? "pass" : "FAIL (" + suite.first_failure + ")") << '\n';
    all_passed = all_passed && suite.passed();
  }
  return all_passed ? 0 : 3;
}

int run_gen(const GenArgs& args) {
  const std::uint64_t rs = spca::replicate_seed(args.seed, args.n, 0);
  DataMatrix x;
  if (args.kind == "hastie") {
    x = spca::gen_hastie(args.n, rs).x;
  } else {
    spca::ToySpec spec = args.kind == "toy" ? spca::toy_spec_signed() : spca::toy_spec_nonneg();
    spec.seed = args.seed;
    x = spca::sample_gaussian(spec, args.n, rs);
  }
  const std::filesystem::path out(args.out_path);
  if (!out.parent_path().empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out.parent_path(), ec);
    if (ec) {
      throw spca::IoError(out.parent_path().string() + ": cannot create output directory (" +
                          ec.message() + ")");
    }
  }
  spca::write_matrix(out, x.values);
  std::cout << "wrote " << out.string() << " (" << x.n() << " x " << x.d() << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse principal components via alternating thresholded updates"};
  app.require_subcommand(1);

  FitArgs fit_args;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit one matrix and write V, U, and a report");
  fit_cmd->add_option("matrix", fit_args.matrix_path, "CSV with one sample per row")->required();
  fit_cmd->add_option("--r", fit_args.r, "number of components")->required();
  fit_cmd->add_option("--norm", fit_args.norm, "sparsity norm")
      ->check(CLI::IsMember({"l0", "l1"}))
      ->capture_default_str();
  fit_cmd->add_option("--budgets", fit_args.budgets, "per-component budgets, comma separated")
      ->required()
      ->delimiter(',');
  fit_cmd->add_option("--tol", fit_args.tol, "stopping tolerance")->capture_default_str();
  fit_cmd->add_option("--max-sweeps", fit_args.max_sweeps, "sweep limit")->capture_default_str();
  fit_cmd->add_option("--seed", fit_args.seed, "solver seed")->capture_default_str();
  fit_cmd->add_option("--out", fit_args.out_dir, "output directory")->capture_default_str();
  fit_cmd->add_flag("--nonneg", fit_args.nonneg, "constrain loadings to be nonnegative");
  CLI::Option* standardize_opt = fit_cmd->add_flag("--standardize", fit_args.standardize,
                                                   "scale columns to unit sample variance");
  fit_cmd->add_flag("--no-center", fit_args.no_center, "skip column centering")
      ->excludes(standardize_opt);

  std::string spec_path;
  CLI::App* exp_cmd = app.add_subcommand("experiment", "Run a replicated experiment spec");
  exp_cmd->add_option("spec", spec_path, "experiment spec or manifest JSON")->required();

  VerifyArgs verify_args;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check the fast solvers against brute-force oracles");
  verify_cmd->add_option("--cases", verify_args.cases, "cases per suite")->capture_default_str();
  verify_cmd->add_option("--dim-max", verify_args.dim_max, "largest input dimension")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_args.seed, "suite seed")->capture_default_str();

  GenArgs gen_args;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write one generated data matrix as CSV");
  gen_cmd->add_option("kind", gen_args.kind, "generator")
      ->required()
      ->check(CLI::IsMember({"hastie", "toy", "nntoy"}));
  gen_cmd->add_option("--n", gen_args.n, "sample count")->required();
  gen_cmd->add_option("--seed", gen_args.seed, "experiment seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_args.out_path, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*fit_cmd) return run_fit(fit_args);
    if (*exp_cmd) return run_experiment_cmd(spec_path);
    if (*verify_cmd) return run_verify(verify_args);
    if (*gen_cmd) return run_gen(gen_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const spca::InfeasibleBudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const spca::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const spca::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

#include "spca/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <sstream>
#include <system_error>
#include <thread>
#include <utility>

#include "json.hpp"

#include "spca/datagen.hpp"
#include "spca/io.hpp"
#include "spca/metrics.hpp"
#include "spca/rng.hpp"
#include "spca/solver.hpp"

namespace spca {

namespace {

using nlohmann::json;

std::string kind_to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kHastie: return "hastie";
    case ExperimentKind::kToy: return "toy";
    case ExperimentKind::kNonnegToy: return "nonneg_toy";
    case ExperimentKind::kCovariance: return "covariance";
    case ExperimentKind::kUserMatrix: return "user_matrix";
  }
  throw InvalidInputError("unknown experiment kind");
}

ExperimentKind kind_from_string(const std::string& s) {
  if (s == "hastie") return ExperimentKind::kHastie;
  if (s == "toy") return ExperimentKind::kToy;
  if (s == "nonneg_toy" || s == "nntoy") return ExperimentKind::kNonnegToy;
  if (s == "covariance") return ExperimentKind::kCovariance;
  if (s == "user_matrix") return ExperimentKind::kUserMatrix;
  throw InvalidInputError("unknown experiment kind '" + s + "'");
}

json spec_to_json_obj(const ExperimentSpec& spec) {
  json j;
  j["kind"] = kind_to_string(spec.kind);
  j["replicates"] = spec.replicates;
  j["sample_sizes"] = spec.sample_sizes;
  j["budgets"] = spec.budgets;
  j["norm"] = spec.norm == Norm::kL0 ? "l0" : "l1";
  j["nonnegative"] = spec.nonnegative;
  j["seed"] = spec.seed;
  j["output_path"] = spec.output_path.string();
  if (!spec.matrix_path.empty()) j["matrix_path"] = spec.matrix_path.string();
  j["standardize"] = spec.standardize;
  j["tol"] = spec.tol;
  j["max_sweeps"] = spec.max_sweeps;
  return j;
}

ExperimentSpec spec_from_json_obj(const json& j) {
  ExperimentSpec spec;
  spec.kind = kind_from_string(j.at("kind").get<std::string>());
  spec.replicates = j.at("replicates").get<int>();
  if (spec.replicates < 1) throw InvalidInputError("replicates must be at least 1");
  if (j.contains("sample_sizes")) {
    for (const auto& v : j.at("sample_sizes")) {
      spec.sample_sizes.push_back(v.get<Index>());
    }
  }
  for (const auto& v : j.at("budgets")) spec.budgets.push_back(v.get<double>());
  if (spec.budgets.empty()) throw InvalidInputError("budgets must not be empty");
  const std::string norm = j.at("norm").get<std::string>();
  if (norm == "l0") {
    spec.norm = Norm::kL0;
  } else if (norm == "l1") {
    spec.norm = Norm::kL1;
  } else {
    throw InvalidInputError("norm must be 'l0' or 'l1', got '" + norm + "'");
  }
  spec.nonnegative = j.value("nonnegative", spec.kind == ExperimentKind::kNonnegToy);
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.output_path = j.at("output_path").get<std::string>();
  if (j.contains("matrix_path")) spec.matrix_path = j.at("matrix_path").get<std::string>();
  spec.standardize = j.value("standardize", false);
  spec.tol = j.value("tol", spec.tol);
  spec.max_sweeps = j.value("max_sweeps", spec.max_sweeps);
  return spec;
}

bool needs_matrix(ExperimentKind kind) {
  return kind == ExperimentKind::kCovariance || kind == ExperimentKind::kUserMatrix;
}

bool has_planted_truth(ExperimentKind kind) {
  return kind == ExperimentKind::kHastie || kind == ExperimentKind::kToy ||
         kind == ExperimentKind::kNonnegToy;
}

Matrix planted_loadings(const ToySpec& toy) {
  Matrix truth(static_cast<Index>(toy.eigenvalues.size()), 2);
  bool seen[2] = {false, false};
  for (const auto& [slot, vec] : toy.fixed_vectors) {
    if (slot < 2) {
      truth.col(slot) = vec;
      seen[slot] = true;
    }
  }
  if (!seen[0] || !seen[1]) throw InvalidInputError("toy spec lacks planted loadings 0 and 1");
  return truth;
}

std::vector<Index> loading_support(const Vector& v) {
  std::vector<Index> out;
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) out.push_back(i);
  }
  return out;
}

bool supports_match(const FactorPair& f, const std::array<std::vector<Index>, 2>& truth) {
  const std::vector<Index> a = loading_support(f.loadings.col(0));
  const std::vector<Index> b = loading_support(f.loadings.col(1));
  return (a == truth[0] && b == truth[1]) || (a == truth[1] && b == truth[0]);
}

struct SizeContext {
  Index n = 0;
  const DataMatrix* shared = nullptr;  // kCovariance / kUserMatrix data
};

std::string csv_cell(const std::optional<bool>& b) {
  if (!b.has_value()) return "";
  return *b ? "1" : "0";
}

}  // namespace

DataMatrix standardize_columns(const DataMatrix& x) {
  if (x.n() < 2) throw InvalidInputError("standardizing needs at least two rows");
  DataMatrix out = x;
  for (Index j = 0; j < x.d(); ++j) {
    const double sd = std::sqrt(out.values.col(j).squaredNorm() / static_cast<double>(x.n() - 1));
    if (sd <= 0.0) {
      throw InvalidInputError("column " + std::to_string(j + 1) + " has zero variance");
    }
    out.values.col(j) /= sd;
  }
  return out;
}

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("experiment spec: ") + e.what());
  }
  try {
    if (j.contains("spec")) j = j.at("spec");  // manifest files embed the spec
    return spec_from_json_obj(j);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("experiment spec: ") + e.what());
  }
}

std::string experiment_spec_to_json(const ExperimentSpec& spec) {
  return spec_to_json_obj(spec).dump(2) + "\n";
}

std::uint64_t replicate_seed(std::uint64_t seed, Index sample_size, int replicate) {
  const std::uint64_t by_size = rng::value(seed, static_cast<std::uint64_t>(sample_size));
  return rng::value(by_size, static_cast<std::uint64_t>(replicate));
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.replicates < 1) throw InvalidInputError("replicates must be at least 1");
  if (spec.budgets.empty()) throw InvalidInputError("budgets must not be empty");
  if (spec.output_path.empty()) throw InvalidInputError("output_path must not be empty");
  if (needs_matrix(spec.kind) && spec.matrix_path.empty()) {
    throw InvalidInputError("this experiment kind needs matrix_path");
  }

  SolverConfig cfg;
  cfg.tol = spec.tol;
  cfg.max_sweeps = spec.max_sweeps;
  validate_config(cfg);

  const auto start = std::chrono::steady_clock::now();

  // Shared read-only inputs, loaded once.
  ToySpec toy;
  Matrix truth;
  if (spec.kind == ExperimentKind::kToy || spec.kind == ExperimentKind::kNonnegToy) {
    toy = spec.kind == ExperimentKind::kToy ? toy_spec_signed() : toy_spec_nonneg();
    toy.seed = spec.seed;
    truth = planted_loadings(toy);
  }
  Matrix sigma;
  DataMatrix user_data;
  if (spec.kind == ExperimentKind::kCovariance) {
    sigma = read_matrix(spec.matrix_path);
  } else if (spec.kind == ExperimentKind::kUserMatrix) {
    user_data = center_columns(read_matrix(spec.matrix_path));
    if (spec.standardize) user_data = standardize_columns(user_data);
  }

  std::vector<SizeContext> sizes;
  std::vector<DataMatrix> covariance_designs;
  if (spec.kind == ExperimentKind::kUserMatrix) {
    sizes.push_back({user_data.n(), &user_data});
  } else {
    if (spec.sample_sizes.empty()) throw InvalidInputError("sample_sizes must not be empty");
    if (spec.kind == ExperimentKind::kCovariance) {
      covariance_designs.reserve(spec.sample_sizes.size());
      for (const Index n : spec.sample_sizes) {
        covariance_designs.push_back(design_from_covariance(sigma, n));
      }
    }
    for (std::size_t s = 0; s < spec.sample_sizes.size(); ++s) {
      const DataMatrix* shared =
          spec.kind == ExperimentKind::kCovariance ? &covariance_designs[s] : nullptr;
      sizes.push_back({spec.sample_sizes[s], shared});
    }
  }

  const Index d = [&] {
    switch (spec.kind) {
      case ExperimentKind::kHastie: return Index{10};
      case ExperimentKind::kToy:
      case ExperimentKind::kNonnegToy: return static_cast<Index>(toy.eigenvalues.size());
      case ExperimentKind::kCovariance: return sigma.cols();
      case ExperimentKind::kUserMatrix: return user_data.d();
    }
    throw InvalidInputError("unknown experiment kind");
  }();

  std::vector<SparsityBudget> budgets;
  budgets.reserve(spec.budgets.size());
  for (const double t : spec.budgets) {
    const SparsityBudget b{spec.norm, t, spec.nonnegative};
    validate_budget(b, d);
    budgets.push_back(b);
  }
  const Index r = static_cast<Index>(budgets.size());
  const bool track_success = has_planted_truth(spec.kind) && r >= 2;

  struct Job {
    std::size_t size_index;
    int replicate;
  };
  std::vector<Job> jobs;
  jobs.reserve(sizes.size() * static_cast<std::size_t>(spec.replicates));
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    for (int rep = 0; rep < spec.replicates; ++rep) jobs.push_back({s, rep});
  }

  std::vector<ReplicateOutcome> details(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());

  const auto run_job = [&](std::size_t index) {
    const Job job = jobs[index];
    const SizeContext& ctx = sizes[job.size_index];
    ReplicateOutcome out;
    out.n = ctx.n;
    out.replicate = job.replicate;
    out.seed = replicate_seed(spec.seed, ctx.n, job.replicate);

    SolverConfig rep_cfg = cfg;
    rep_cfg.seed = out.seed;

    DataMatrix generated;
    const DataMatrix* x = ctx.shared;
    std::array<std::vector<Index>, 2> hastie_truth;
    if (spec.kind == ExperimentKind::kHastie) {
      HastieSample sample = gen_hastie(ctx.n, out.seed);
      hastie_truth = sample.truth_supports;
      generated = std::move(sample.x);
      x = &generated;
    } else if (spec.kind == ExperimentKind::kToy || spec.kind == ExperimentKind::kNonnegToy) {
      generated = sample_gaussian(toy, ctx.n, out.seed);
      x = &generated;
    }

    const FitResult fit_out = fit(*x, r, budgets, rep_cfg);
    const EvalResult eval = evaluate(*x, fit_out.factors.loadings);
    out.rre = eval.rre;
    out.pev = eval.pev;
    out.sweeps_run = fit_out.report.sweeps_run;
    if (track_success) {
      if (spec.kind == ExperimentKind::kHastie) {
        out.success = supports_match(fit_out.factors, hastie_truth);
      } else {
        out.success = success_recovery(fit_out.factors.loadings.leftCols(2), truth);
      }
    }
    details[index] = std::move(out);
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, hw), jobs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      try {
        run_job(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
          try {
            run_job(i);
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  ExperimentResult result;
  result.details = std::move(details);

  // Aggregate per sample size in replicate order so repeated runs write the
  // same bytes.
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    SizeSummary sum;
    sum.n = sizes[s].n;
    sum.replicates = spec.replicates;
    sum.rre_min = sum.pev_min = std::numeric_limits<double>::infinity();
    sum.rre_max = sum.pev_max = -std::numeric_limits<double>::infinity();
    double rre_total = 0.0;
    double pev_total = 0.0;
    int successes = 0;
    for (int rep = 0; rep < spec.replicates; ++rep) {
      const ReplicateOutcome& out =
          result.details[s * static_cast<std::size_t>(spec.replicates) +
                         static_cast<std::size_t>(rep)];
      rre_total += out.rre;
      pev_total += out.pev;
      sum.rre_min = std::min(sum.rre_min, out.rre);
      sum.rre_max = std::max(sum.rre_max, out.rre);
      sum.pev_min = std::min(sum.pev_min, out.pev);
      sum.pev_max = std::max(sum.pev_max, out.pev);
      if (out.success.value_or(false)) ++successes;
    }
    sum.rre_mean = rre_total / spec.replicates;
    sum.pev_mean = pev_total / spec.replicates;
    if (track_success) sum.successes = successes;
    result.summary.push_back(sum);
  }

  std::error_code ec;
  std::filesystem::create_directories(spec.output_path, ec);
  if (ec) {
    throw IoError(spec.output_path.string() + ": cannot create output directory (" +
                  ec.message() + ")");
  }
  result.summary_path = spec.output_path / "summary.csv";
  result.detail_path = spec.output_path / "details.csv";
  result.manifest_path = spec.output_path / "manifest.json";

  {
    std::ostringstream out;
    out << "n,replicates,successes,rre_mean,rre_min,rre_max,pev_mean,pev_min,pev_max\n";
    for (const SizeSummary& s : result.summary) {
      out << s.n << ',' << s.replicates << ','
          << (s.successes.has_value() ? std::to_string(*s.successes) : std::string()) << ','
          << format_double(s.rre_mean) << ',' << format_double(s.rre_min) << ','
          << format_double(s.rre_max) << ',' << format_double(s.pev_mean) << ','
          << format_double(s.pev_min) << ',' << format_double(s.pev_max) << '\n';
    }
    write_text_file(result.summary_path, out.str());
  }
  {
    std::ostringstream out;
    out << "n,replicate,seed,success,rre,pev,sweeps\n";
    for (const ReplicateOutcome& o : result.details) {
      out << o.n << ',' << o.replicate << ',' << o.seed << ',' << csv_cell(o.success) << ','
          << format_double(o.rre) << ',' << format_double(o.pev) << ',' << o.sweeps_run << '\n';
    }
    write_text_file(result.detail_path, out.str());
  }
  {
    json manifest;
    manifest["version"] = kVersion;
    manifest["spec"] = spec_to_json_obj(spec);
    json seed_list = json::array();
    for (const SizeContext& ctx : sizes) {
      json entry;
      entry["n"] = ctx.n;
      std::vector<std::uint64_t> seeds;
      seeds.reserve(static_cast<std::size_t>(spec.replicates));
      for (int rep = 0; rep < spec.replicates; ++rep) {
        seeds.push_back(replicate_seed(spec.seed, ctx.n, rep));
      }
      entry["replicate_seeds"] = seeds;
      seed_list.push_back(entry);
    }
    manifest["seeds"] = seed_list;
    manifest["outputs"] = {{"summary", result.summary_path.string()},
                           {"details", result.detail_path.string()}};
    manifest["timings"] = {
        {"total_seconds",
         std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    write_text_file(result.manifest_path, manifest.dump(2) + "\n");
  }

  return result;
}

}  // namespace spca

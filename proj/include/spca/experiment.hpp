#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spca/types.hpp"

namespace spca {

enum class ExperimentKind { kHastie, kToy, kNonnegToy, kCovariance, kUserMatrix };

// One reproducible batch of fits. Generated kinds draw fresh data per
// replicate; kCovariance builds a deterministic design from a covariance CSV
// at each sample size; kUserMatrix fits the given matrix directly and
// ignores sample_sizes.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kToy;
  int replicates = 1;
  std::vector<Index> sample_sizes;
  std::vector<double> budgets;  // one entry per component
  Norm norm = Norm::kL0;
  bool nonnegative = false;
  std::uint64_t seed = 0;
  std::filesystem::path output_path;  // directory for the report files
  std::filesystem::path matrix_path;  // kCovariance and kUserMatrix input
  bool standardize = false;           // kUserMatrix: scale columns to unit variance
  double tol = 1e-6;
  int max_sweeps = 200;
};

// Reads the JSON fields documented in the README. A manifest written by
// run_experiment is accepted too (its embedded "spec" object is used), which
// makes any past run repeatable from its manifest alone.
ExperimentSpec parse_experiment_spec(const std::string& json_text);

std::string experiment_spec_to_json(const ExperimentSpec& spec);

// Mixes the experiment seed with the sample size and the replicate index, so
// every replicate is independent and can be re-run on its own.
std::uint64_t replicate_seed(std::uint64_t seed, Index sample_size, int replicate);

// Scales every (already centered) column to unit sample variance. Throws on
// constant columns and on matrices with fewer than two rows.
DataMatrix standardize_columns(const DataMatrix& x);

struct ReplicateOutcome {
  Index n = 0;
  int replicate = 0;
  std::uint64_t seed = 0;
  std::optional<bool> success;  // only for kinds with planted loadings
  double rre = 0.0;
  double pev = 0.0;
  int sweeps_run = 0;
};

struct SizeSummary {
  Index n = 0;
  int replicates = 0;
  std::optional<int> successes;
  double rre_mean = 0.0, rre_min = 0.0, rre_max = 0.0;
  double pev_mean = 0.0, pev_min = 0.0, pev_max = 0.0;
};

struct ExperimentResult {
  std::vector<ReplicateOutcome> details;  // ordered by (sample size, replicate)
  std::vector<SizeSummary> summary;
  std::filesystem::path summary_path;
  std::filesystem::path detail_path;
  std::filesystem::path manifest_path;
};

// Runs all (sample size, replicate) jobs across a thread pool, aggregates in
// replicate order, and writes summary.csv, details.csv, and manifest.json
// under spec.output_path. Repeated runs produce byte-identical CSVs; only
// the manifest carries wall-clock timings.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace spca

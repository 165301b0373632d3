#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chebypr/graph.hpp"
#include "chebypr/operators.hpp"
#include "chebypr/solvers.hpp"
#include "chebypr/synthetic.hpp"
#include "chebypr/temporal.hpp"

namespace chebypr {

/// Shared configuration for the CLI subcommands. Every run is fully
/// determined by this struct: graph seeds, realization seeds, quadrature
/// and iteration orders are all fixed, so emitted CSV is bit-reproducible.
struct ExperimentConfig {
  // Graph source: a dataset file or a synthetic recipe.
  std::string input_path;
  std::optional<SyntheticRecipe> recipe;
  std::uint64_t graph_seed = 1;
  std::optional<std::size_t> batch_size;  // regroup dataset snapshots by event count

  // Diffusion strength: give alpha or mu (alpha = 0.5 when neither is set).
  std::optional<double> alpha;
  std::optional<double> mu;

  OperatorKind op_kind = OperatorKind::standard;
  OperatorParams op_params;

  // Budget mode (order) vs target mode (relative l2 error).
  std::optional<int> order;
  std::optional<double> target;

  int seeds = 20;
  std::uint64_t rng_seed = 7;

  // Snapshot window [lo:hi] for dataset perturbations, and time direction.
  std::optional<std::size_t> window_lo;
  std::optional<std::size_t> window_hi;
  bool reverse = false;

  double tau_msg = 0.0;
  std::size_t dense_limit = kDefaultDenseLimit;
  std::uint64_t max_pushes = kDefaultMaxPushes;

  // Experiment-specific knobs.
  std::size_t pert_edges = 1;                   // synthetic perturbation size (solve/update/exp1/exp3)
  std::vector<std::size_t> perturbation_sizes;  // exp2 sweep
  std::vector<double> targets;                  // exp3 sweep
  std::size_t horizon = 100;                    // exp4 tracked snapshots
  std::size_t snapshot_edges = 5;               // synthetic stream: edges per snapshot

  std::string out_path;

  double resolved_mu() const;
  double resolved_alpha() const;
};

/// Deterministic per-realization seed derivation.
std::uint64_t child_seed(std::uint64_t root, std::uint64_t index);

// ---------------------------------------------------------------------------
// CSV output

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os) const;
  void write_file(const std::string& path) const;
};

std::string format_double(double v);

void write_score_vector(const ScoreVector& scores, const std::string& path);

// ---------------------------------------------------------------------------
// Subcommand results

struct SolveOutcome {
  int order = 0;
  double rel_error = 0.0;
  std::uint64_t messages = 0;
  ScoreVector scores;
};

/// From-scratch solve on the configured graph (g_new when a perturbation
/// window is given). Target mode searches the smallest order meeting the
/// target against the reference solution.
SolveOutcome run_solve(const ExperimentConfig& config);

/// Local update across the configured perturbation.
SolveOutcome run_update(const ExperimentConfig& config);

struct Exp1Row {
  std::string method;  // "update" | "scratch"
  std::string op;
  int order = 0;
  double messages_mean = 0.0;
  double mean_rel_error = 0.0;
  double stderr_mean = 0.0;
};

/// Error-vs-budget curves for updating and solving from scratch, averaged
/// over seed realizations of the start distribution.
std::vector<Exp1Row> run_exp1(const ExperimentConfig& config);

struct Exp2Row {
  std::size_t perturbation_edges = 0;
  std::uint64_t messages_update = 0;
  std::uint64_t messages_scratch = 0;
  bool update_exceeds_scratch = false;
};

struct Exp2Outcome {
  std::vector<Exp2Row> rows;
  std::optional<std::size_t> crossover_edges;  // smallest size where update >= scratch
};

/// Messages needed to hit the error target as the perturbation grows.
Exp2Outcome run_exp2(const ExperimentConfig& config);

struct Exp3Row {
  std::string method;  // "cheby_update" | "rwr" | "push"
  double error_target = 0.0;
  std::uint64_t messages = 0;
  double achieved_error = 0.0;
  bool guard_tripped = false;
};

/// Messages per method over an error-target sweep.
std::vector<Exp3Row> run_exp3(const ExperimentConfig& config);

struct Exp4Row {
  std::size_t snapshot = 0;
  double rel_error_tracked = 0.0;
  double rel_error_scratch = 0.0;
  std::size_t perturbation_size = 0;
  bool fell_back_to_scratch = false;
};

/// Tracking over a snapshot horizon at fixed order, against a same-budget
/// from-scratch comparator. A spectral-bound violation mid-run falls back
/// to a scratch solve for that step and is flagged in the row.
std::vector<Exp4Row> run_exp4(const ExperimentConfig& config);

CsvTable solve_csv(const SolveOutcome& outcome);
CsvTable exp1_csv(const std::vector<Exp1Row>& rows);
CsvTable exp2_csv(const Exp2Outcome& outcome);
CsvTable exp3_csv(const std::vector<Exp3Row>& rows);
CsvTable exp4_csv(const std::vector<Exp4Row>& rows);

}  // namespace chebypr

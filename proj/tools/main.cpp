#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "chebypr/errors.hpp"
#include "chebypr/experiments.hpp"

namespace {

using namespace chebypr;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Expands `--config FILE` into ordinary flags. The file holds plain
// key=value lines mirroring the flags; explicit command-line flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a file path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  auto given_on_cmdline = [&args](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&flag](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + " line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument(path + " line " + std::to_string(line_no) + ": empty key");
    }
    const std::string flag = "--" + key;
    if (!given_on_cmdline(flag)) args.push_back(flag + "=" + value);
  }
  return args;
}

struct CliState {
  ExperimentConfig config;
  std::string synthetic;
  std::string op_name = "standard";
  std::string window;
  std::string vector_out;
};

void add_common_options(CLI::App* cmd, CliState& st) {
  cmd->add_option("--input", st.config.input_path,
                  "Edge-list file, plain or gzip: lines 'src dst [weight] timestamp'");
  cmd->add_option("--synthetic", st.synthetic,
                  "Synthetic recipe MODEL,N,PARAM, e.g. ba,2000,3 or geometric,500,0.08");
  cmd->add_option("--graph-seed", st.config.graph_seed, "Seed for synthetic graph generation");
  cmd->add_option("--batch-size", st.config.batch_size,
                  "Regroup dataset snapshots into fixed-size event batches");

  auto* alpha = cmd->add_option("--alpha", st.config.alpha, "Restart probability in (0,1]");
  auto* mu = cmd->add_option("--mu", st.config.mu, "Regularization strength mu = (1-alpha)/alpha");
  alpha->excludes(mu);
  mu->excludes(alpha);

  cmd->add_option("--operator", st.op_name, "Reference operator kind")
      ->check(CLI::IsMember({"standard", "gamma", "iterated", "dual", "gamma-dual",
                             "recentered"}));
  cmd->add_option("--gamma", st.config.op_params.gamma, "Laplacian power for gamma kinds");
  cmd->add_option("--sigma", st.config.op_params.sigma, "Degree exponent for dual kinds");
  cmd->add_option("--m", st.config.op_params.m, "Iteration count for the iterated kind");

  auto* order = cmd->add_option("--order", st.config.order, "Polynomial order K (budget mode)");
  auto* target = cmd->add_option("--target", st.config.target,
                                 "Relative l2 error target (target mode)");
  order->excludes(target);
  target->excludes(order);

  cmd->add_option("--seeds", st.config.seeds, "Number of start-distribution realizations");
  cmd->add_option("--rng-seed", st.config.rng_seed, "Root seed for realizations");
  cmd->add_option("--window", st.window, "Snapshot window I:J for dataset perturbations");
  cmd->add_flag("--reverse-time", st.config.reverse,
                "Walk the stream backwards (edge deletions)");
  cmd->add_option("--tau-msg", st.config.tau_msg,
                  "Activity threshold for message counting (default 0: strictly nonzero)");
  cmd->add_option("--dense-limit", st.config.dense_limit,
                  "Maximum node count for dense solves and dense operator kinds");
  cmd->add_option("--max-pushes", st.config.max_pushes, "Push baseline non-termination guard");
  cmd->add_option("--pert-edges", st.config.pert_edges,
                  "Synthetic perturbation size in edges");
  cmd->add_option("--out", st.config.out_path, "Output CSV path (stdout when omitted)");
}

void finalize_config(CliState& st) {
  if (!st.synthetic.empty()) st.config.recipe = parse_synthetic_recipe(st.synthetic);
  if (st.config.input_path.empty() && !st.config.recipe) {
    throw std::invalid_argument("need --input PATH or --synthetic MODEL,N,PARAM");
  }
  if (!st.config.input_path.empty() && st.config.recipe) {
    throw std::invalid_argument("give --input or --synthetic, not both");
  }
  const auto kind = operator_kind_from_name(st.op_name);
  if (!kind) throw std::invalid_argument("unknown operator kind '" + st.op_name + "'");
  st.config.op_kind = *kind;
  if (!st.window.empty()) {
    const auto colon = st.window.find(':');
    try {
      if (colon == std::string::npos) {
        st.config.window_lo = std::stoul(st.window);
      } else {
        st.config.window_lo = std::stoul(st.window.substr(0, colon));
        st.config.window_hi = std::stoul(st.window.substr(colon + 1));
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("--window expects I:J with integer snapshot indices, got '" +
                                  st.window + "'");
    }
    if (st.config.window_hi && *st.config.window_hi <= *st.config.window_lo) {
      throw std::invalid_argument("--window I:J needs I < J");
    }
  }
}

void emit(const CsvTable& table, const std::string& out_path) {
  if (out_path.empty()) {
    table.write(std::cout);
  } else {
    table.write_file(out_path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Personalized PageRank on evolving graphs: polynomial from-scratch solves, local "
      "updates, baselines, and the experiment harness (CSV output)"};
  app.name("chebypr");
  app.require_subcommand(1);
  app.footer(
      "Every subcommand also accepts --config FILE holding plain key=value lines that\n"
      "mirror the flags (e.g. 'synthetic=ba,2000,3'); explicit flags take precedence.");

  CliState st;
  CLI::App* solve = app.add_subcommand("solve", "From-scratch solve; emits CSV + score vector");
  CLI::App* update = app.add_subcommand("update", "Local update across a perturbation");
  CLI::App* exp1 = app.add_subcommand("exp1", "Error vs budget: update against scratch");
  CLI::App* exp2 = app.add_subcommand("exp2", "Messages vs perturbation size at a fixed target");
  CLI::App* exp3 = app.add_subcommand("exp3", "Messages per method over an error-target sweep");
  CLI::App* exp4 = app.add_subcommand("exp4", "Long-horizon tracking at a fixed order");

  std::vector<std::size_t> sizes;
  std::vector<double> targets;
  for (CLI::App* cmd : {solve, update, exp1, exp2, exp3, exp4}) {
    add_common_options(cmd, st);
  }
  for (CLI::App* cmd : {solve, update}) {
    cmd->add_option("--vector-out", st.vector_out,
                    "Score-vector output path (default: OUT.vec when --out is set)");
  }
  exp2->add_option("--sizes", sizes, "Perturbation sizes to sweep")->delimiter(',');
  exp3->add_option("--targets", targets, "Error targets to sweep")->delimiter(',');
  exp4->add_option("--horizon", st.config.horizon, "Number of tracked snapshots");
  exp4->add_option("--snapshot-edges", st.config.snapshot_edges,
                   "Synthetic stream: edges arriving per snapshot");

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes the vector back to front
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    finalize_config(st);
    st.config.perturbation_sizes = sizes;
    st.config.targets = targets;

    if (app.got_subcommand(solve) || app.got_subcommand(update)) {
      const SolveOutcome outcome =
          app.got_subcommand(solve) ? run_solve(st.config) : run_update(st.config);
      emit(solve_csv(outcome), st.config.out_path);
      std::string vec_path = st.vector_out;
      if (vec_path.empty() && !st.config.out_path.empty()) {
        vec_path = st.config.out_path + ".vec";
      }
      if (!vec_path.empty()) write_score_vector(outcome.scores, vec_path);
    } else if (app.got_subcommand(exp1)) {
      emit(exp1_csv(run_exp1(st.config)), st.config.out_path);
    } else if (app.got_subcommand(exp2)) {
      emit(exp2_csv(run_exp2(st.config)), st.config.out_path);
    } else if (app.got_subcommand(exp3)) {
      emit(exp3_csv(run_exp3(st.config)), st.config.out_path);
    } else if (app.got_subcommand(exp4)) {
      emit(exp4_csv(run_exp4(st.config)), st.config.out_path);
    }
  } catch (const LambdaBoundViolation& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

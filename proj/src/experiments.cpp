#include "chebypr/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "chebypr/errors.hpp"

namespace chebypr {

namespace {

constexpr int kReferenceOrder = 400;   // used when the graph exceeds the dense limit
constexpr int kOrderSearchCap = 8192;  // target mode gives up beyond this order
constexpr int kRwrSweepCap = 20000;    // experiment-3 iteration cap per target

// Indicator of a random start vertex, drawn among nodes that are present
// (non-isolated) in the anchor graph so dataset windows never seed a node
// that has not arrived yet.
ScoreVector seed_vector(const Graph& g, std::uint64_t seed) {
  const NodeId n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("seed_vector: empty graph");
  std::vector<NodeId> candidates;
  for (NodeId u = 0; u < n; ++u) {
    if (g.degree(u) > 0.0) candidates.push_back(u);
  }
  if (candidates.empty()) {
    candidates.resize(n);
    for (NodeId u = 0; u < n; ++u) candidates[u] = u;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  ScoreVector y(n, 0.0);
  y[candidates[pick(rng)]] = 1.0;
  return y;
}

// Ground truth: dense factorization within the limit, a high-order
// diffusion solve beyond it.
class Reference {
 public:
  Reference(const Graph& g, const OperatorSpec& spec, double mu, std::size_t dense_limit)
      : g_(&g), spec_(spec), mu_(mu) {
    if (g.num_nodes() <= dense_limit) dense_.emplace(g, spec, mu, dense_limit);
  }

  ScoreVector solve(const ScoreVector& y) const {
    if (dense_) return dense_->solve(y);
    MessageLedger discard;
    return solve_scratch(*g_, spec_, mu_, y, kReferenceOrder, discard);
  }

 private:
  std::optional<DenseSolver> dense_;
  const Graph* g_;
  OperatorSpec spec_;
  double mu_;
};

struct GraphPair {
  Graph g_old;
  Graph g_new;
  GraphDelta delta;
};

SnapshotStream load_stream(const ExperimentConfig& c) {
  SnapshotStream s = load_edge_stream(c.input_path);
  if (c.batch_size) s = rebatch(s, *c.batch_size);
  if (c.reverse) s = reverse_time(s);
  return s;
}

GraphPair resolve_pair(const ExperimentConfig& c, std::size_t pert_edges) {
  GraphPair p;
  if (!c.input_path.empty()) {
    const SnapshotStream s = load_stream(c);
    const std::size_t lo = c.window_lo.value_or(1);
    const std::size_t hi = c.window_hi.value_or(std::min(lo + 1, s.num_snapshots()));
    p.g_old = snapshot_graph(s, lo);
    p.delta = delta_between(s, lo, hi);
    p.g_new = apply_delta(p.g_old, p.delta);
  } else if (c.recipe) {
    p.g_old = make_synthetic_graph(*c.recipe, c.graph_seed);
    p.delta = random_new_edges(p.g_old, pert_edges, child_seed(c.graph_seed, 0x70));
    p.g_new = apply_delta(p.g_old, p.delta);
  } else {
    throw std::invalid_argument("config: need --input PATH or --synthetic MODEL,N,PARAM");
  }
  return p;
}

struct OrderSearch {
  int order = 0;
  double rel_error = 0.0;
  std::uint64_t messages = 0;
};

// Smallest order whose result meets the target against `ref`: doubling
// followed by bisection (error is monotone beyond small orders).
template <typename RunFn>
OrderSearch minimal_order(RunFn&& run, const ScoreVector& ref, double target, double tau) {
  auto attempt = [&](int k) {
    MessageLedger ledger;
    ledger.tau = tau;
    const ScoreVector got = run(k, ledger);
    return std::pair<double, std::uint64_t>(relative_error(got, ref), ledger.total());
  };

  auto [err0, msgs0] = attempt(0);
  if (err0 <= target) return {0, err0, msgs0};

  int hi = 1;
  double err_hi;
  std::uint64_t msgs_hi;
  while (true) {
    std::tie(err_hi, msgs_hi) = attempt(hi);
    if (err_hi <= target) break;
    if (hi >= kOrderSearchCap) {
      throw NumericalError("order search: target " + format_double(target) +
                           " unreachable within order " + std::to_string(kOrderSearchCap));
    }
    hi *= 2;
  }
  int lo = hi / 2;  // err(lo) > target
  OrderSearch best{hi, err_hi, msgs_hi};
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    auto [err, msgs] = attempt(mid);
    if (err <= target) {
      hi = mid;
      best = {mid, err, msgs};
    } else {
      lo = mid;
    }
  }
  return best;
}

std::vector<int> budget_grid(int cap) {
  std::vector<int> grid{0};
  int k = 1;
  while (k < cap) {
    grid.push_back(k);
    k = std::max(k + 1, static_cast<int>(std::lround(k * 1.4)));
  }
  grid.push_back(cap);
  return grid;
}

double sample_stderr(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : xs) s += (x - mean) * (x - mean);
  return std::sqrt(s / (static_cast<double>(xs.size() - 1) * static_cast<double>(xs.size())));
}

void require_exactly_one_mode(const ExperimentConfig& c) {
  if (c.order.has_value() == c.target.has_value()) {
    throw std::invalid_argument("config: set exactly one of --order and --target");
  }
}

}  // namespace

double ExperimentConfig::resolved_alpha() const {
  if (alpha && mu) throw std::invalid_argument("config: give --alpha or --mu, not both");
  if (alpha) {
    if (!(*alpha > 0.0) || *alpha > 1.0) {
      throw std::invalid_argument("config: alpha must lie in (0,1]");
    }
    return *alpha;
  }
  if (mu) return alpha_from_mu(*mu);
  return 0.5;
}

double ExperimentConfig::resolved_mu() const {
  if (alpha && mu) throw std::invalid_argument("config: give --alpha or --mu, not both");
  if (mu) {
    if (!(*mu > 0.0)) throw std::invalid_argument("config: mu must be positive");
    return *mu;
  }
  return mu_from_alpha(resolved_alpha());
}

std::uint64_t child_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void CsvTable::write(std::ostream& os) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    os << header[i] << (i + 1 == header.size() ? "\n" : ",");
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << row[i] << (i + 1 == row.size() ? "\n" : ",");
    }
  }
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  write(out);
}

void write_score_vector(const ScoreVector& scores, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out << i << " " << format_double(scores[i]) << "\n";
  }
}

SolveOutcome run_solve(const ExperimentConfig& c) {
  require_exactly_one_mode(c);
  Graph g;
  if (!c.input_path.empty()) {
    const SnapshotStream s = load_stream(c);
    g = snapshot_graph(s, c.window_hi.value_or(c.window_lo.value_or(s.num_snapshots())));
  } else if (c.recipe) {
    g = make_synthetic_graph(*c.recipe, c.graph_seed);
  } else {
    throw std::invalid_argument("config: need --input PATH or --synthetic MODEL,N,PARAM");
  }
  const double mu = c.resolved_mu();
  const OperatorSpec spec = make_operator(c.op_kind, c.op_params, g, c.dense_limit);
  const ScoreVector y = seed_vector(g, child_seed(c.rng_seed, 0));
  const ScoreVector ref = Reference(g, spec, mu, c.dense_limit).solve(y);

  SolveOutcome out;
  if (c.order) {
    MessageLedger ledger;
    ledger.tau = c.tau_msg;
    out.scores = solve_scratch(g, spec, mu, y, *c.order, ledger);
    out.order = *c.order;
    out.rel_error = relative_error(out.scores, ref);
    out.messages = ledger.total();
  } else {
    const OrderSearch found = minimal_order(
        [&](int k, MessageLedger& led) { return solve_scratch(g, spec, mu, y, k, led); }, ref,
        *c.target, c.tau_msg);
    MessageLedger ledger;
    ledger.tau = c.tau_msg;
    out.scores = solve_scratch(g, spec, mu, y, found.order, ledger);
    out.order = found.order;
    out.rel_error = found.rel_error;
    out.messages = found.messages;
  }
  return out;
}

SolveOutcome run_update(const ExperimentConfig& c) {
  require_exactly_one_mode(c);
  const GraphPair pair = resolve_pair(c, c.pert_edges);
  const double mu = c.resolved_mu();
  const OperatorSpec spec = make_operator(c.op_kind, c.op_params, pair.g_old, c.dense_limit);
  const OperatorSpec spec_new = make_operator(c.op_kind, c.op_params, pair.g_new, c.dense_limit);
  const ScoreVector y = seed_vector(pair.g_old, child_seed(c.rng_seed, 0));
  const ScoreVector pr_old = Reference(pair.g_old, spec, mu, c.dense_limit).solve(y);
  const ScoreVector ref = Reference(pair.g_new, spec_new, mu, c.dense_limit).solve(y);

  auto run_at = [&](int k, MessageLedger& led) {
    return update_local(pair.g_old, pair.g_new, spec, mu, pr_old, k, led, c.dense_limit).scores;
  };

  SolveOutcome out;
  if (c.order) {
    MessageLedger ledger;
    ledger.tau = c.tau_msg;
    out.scores = run_at(*c.order, ledger);
    out.order = *c.order;
    out.rel_error = relative_error(out.scores, ref);
    out.messages = ledger.total();
  } else {
    const OrderSearch found = minimal_order(run_at, ref, *c.target, c.tau_msg);
    MessageLedger ledger;
    ledger.tau = c.tau_msg;
    out.scores = run_at(found.order, ledger);
    out.order = found.order;
    out.rel_error = found.rel_error;
    out.messages = found.messages;
  }
  return out;
}

std::vector<Exp1Row> run_exp1(const ExperimentConfig& c) {
  if (c.seeds < 1) throw std::invalid_argument("exp1: need at least one seed realization");
  if (c.target) throw std::invalid_argument("exp1 sweeps a budget grid; --target is not used");
  const GraphPair pair = resolve_pair(c, c.pert_edges);
  const double mu = c.resolved_mu();
  const OperatorSpec spec_old = make_operator(c.op_kind, c.op_params, pair.g_old, c.dense_limit);
  const OperatorSpec spec_scratch =
      make_operator(c.op_kind, c.op_params, pair.g_new, c.dense_limit);
  const Reference ref_old(pair.g_old, spec_old, mu, c.dense_limit);
  const Reference ref_new(pair.g_new, spec_scratch, mu, c.dense_limit);

  std::vector<ScoreVector> ys, pr_olds, refs;
  for (int i = 0; i < c.seeds; ++i) {
    ys.push_back(seed_vector(pair.g_old, child_seed(c.rng_seed, i)));
    pr_olds.push_back(ref_old.solve(ys.back()));
    refs.push_back(ref_new.solve(ys.back()));
  }

  const std::vector<int> grid = budget_grid(c.order.value_or(64));
  std::vector<Exp1Row> rows;
  const char* op_name = operator_kind_name(c.op_kind);
  for (const char* method : {"update", "scratch"}) {
    const bool is_update = std::string(method) == "update";
    for (int k : grid) {
      std::vector<double> errs;
      double msg_sum = 0.0;
      for (int i = 0; i < c.seeds; ++i) {
        MessageLedger ledger;
        ledger.tau = c.tau_msg;
        ScoreVector got =
            is_update
                ? update_local(pair.g_old, pair.g_new, spec_old, mu, pr_olds[i], k, ledger,
                               c.dense_limit)
                      .scores
                : solve_scratch(pair.g_new, spec_scratch, mu, ys[i], k, ledger);
        errs.push_back(relative_error(got, refs[i]));
        msg_sum += static_cast<double>(ledger.total());
      }
      double mean = 0.0;
      for (double e : errs) mean += e;
      mean /= static_cast<double>(errs.size());
      rows.push_back({method, op_name, k, msg_sum / static_cast<double>(c.seeds), mean,
                      sample_stderr(errs, mean)});
    }
  }
  return rows;
}

Exp2Outcome run_exp2(const ExperimentConfig& c) {
  const double target = c.target.value_or(1e-13);
  if (target < 1e-14) {
    throw std::invalid_argument("exp2: target " + format_double(target) +
                                " is below the double-precision floor 1e-14");
  }
  std::vector<std::size_t> sizes = c.perturbation_sizes;
  if (sizes.empty()) sizes = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048};
  std::sort(sizes.begin(), sizes.end());

  const double mu = c.resolved_mu();
  Exp2Outcome out;

  Graph g_old;
  SnapshotStream stream;
  GraphDelta master;  // synthetic mode: nested prefixes keep the sweep monotone
  const bool dataset = !c.input_path.empty();
  std::size_t lo = 0;
  if (dataset) {
    stream = load_stream(c);
    lo = c.window_lo.value_or(1);
    g_old = snapshot_graph(stream, lo);
  } else if (c.recipe) {
    g_old = make_synthetic_graph(*c.recipe, c.graph_seed);
    master = random_new_edges(g_old, sizes.back(), child_seed(c.graph_seed, 0x70));
  } else {
    throw std::invalid_argument("config: need --input PATH or --synthetic MODEL,N,PARAM");
  }

  const OperatorSpec spec_old = make_operator(c.op_kind, c.op_params, g_old, c.dense_limit);
  const ScoreVector y = seed_vector(g_old, child_seed(c.rng_seed, 0));
  const ScoreVector pr_old = Reference(g_old, spec_old, mu, c.dense_limit).solve(y);

  for (std::size_t size : sizes) {
    GraphDelta delta;
    if (dataset) {
      const std::size_t hi = lo + size;
      if (hi > stream.num_snapshots()) break;
      delta = delta_between(stream, lo, hi);
    } else {
      delta.changes.assign(master.changes.begin(), master.changes.begin() + size);
    }
    const Graph g_new = apply_delta(g_old, delta);
    const OperatorSpec spec_scratch =
        make_operator(c.op_kind, c.op_params, g_new, c.dense_limit);
    const ScoreVector ref = Reference(g_new, spec_scratch, mu, c.dense_limit).solve(y);

    const OrderSearch upd = minimal_order(
        [&](int k, MessageLedger& led) {
          return update_local(g_old, g_new, spec_old, mu, pr_old, k, led, c.dense_limit).scores;
        },
        ref, target, c.tau_msg);
    const OrderSearch scr = minimal_order(
        [&](int k, MessageLedger& led) {
          return solve_scratch(g_new, spec_scratch, mu, y, k, led);
        },
        ref, target, c.tau_msg);

    Exp2Row row;
    row.perturbation_edges = delta.changes.size();
    row.messages_update = upd.messages;
    row.messages_scratch = scr.messages;
    row.update_exceeds_scratch = upd.messages >= scr.messages;
    if (row.update_exceeds_scratch && !out.crossover_edges) {
      out.crossover_edges = row.perturbation_edges;
    }
    out.rows.push_back(row);
  }
  return out;
}

std::vector<Exp3Row> run_exp3(const ExperimentConfig& c) {
  if (c.op_kind != OperatorKind::standard) {
    throw std::invalid_argument(
        "exp3 compares against random-walk baselines and needs --operator standard");
  }
  std::vector<double> targets = c.targets;
  if (targets.empty()) targets = {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12};

  const GraphPair pair = resolve_pair(c, c.pert_edges);
  const double mu = c.resolved_mu();
  const double alpha = c.resolved_alpha();
  const OperatorSpec spec_old = make_operator(c.op_kind, c.op_params, pair.g_old, c.dense_limit);
  const ScoreVector y = seed_vector(pair.g_old, child_seed(c.rng_seed, 0));
  const ScoreVector pr_old = Reference(pair.g_old, spec_old, mu, c.dense_limit).solve(y);
  const ScoreVector ref = Reference(pair.g_new, spec_old, mu, c.dense_limit).solve(y);

  std::vector<Exp3Row> rows;
  for (double target : targets) {
    {  // proposed method
      try {
        const OrderSearch found = minimal_order(
            [&](int k, MessageLedger& led) {
              return update_local(pair.g_old, pair.g_new, spec_old, mu, pr_old, k, led,
                                  c.dense_limit)
                  .scores;
            },
            ref, target, c.tau_msg);
        rows.push_back({"cheby_update", target, found.messages, found.rel_error, false});
      } catch (const NumericalError&) {
        rows.push_back(
            {"cheby_update", target, 0, std::numeric_limits<double>::quiet_NaN(), true});
      }
    }
    {  // warm-restarted power iteration on the localized seed
      ScoreVector r = transition_delta_apply(pair.g_old, pair.g_new, pr_old);
      for (auto& e : r) e *= alpha;
      ScoreVector p = r;
      MessageLedger ledger;
      ledger.tau = c.tau_msg;
      const double scale = 1.0 / (1.0 - alpha);
      double err = std::numeric_limits<double>::infinity();
      bool reached = false;
      for (int t = 0; t < kRwrSweepCap; ++t) {
        ledger.add_round(round_message_count(pair.g_new, support_of(p, ledger.tau)));
        const ScoreVector pt = transition_transpose_apply(pair.g_new, p);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = (1.0 - alpha) * r[i] + alpha * pt[i];
        ScoreVector est(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) est[i] = pr_old[i] + scale * p[i];
        err = relative_error(est, ref);
        if (err <= target) {
          reached = true;
          break;
        }
      }
      rows.push_back({"rwr", target, ledger.total(), err, !reached});
    }
    {  // push baseline: sweep epsilon down until the target error is met
      double eps = target;
      Exp3Row row{"push", target, 0, std::numeric_limits<double>::quiet_NaN(), false};
      for (int attempt = 0; attempt < 40; ++attempt) {
        MessageLedger ledger;
        ledger.tau = c.tau_msg;
        try {
          const ScoreVector got = push_update(pair.g_old, pair.g_new, alpha, pr_old, eps,
                                              ledger, c.max_pushes);
          row.messages = ledger.total();
          row.achieved_error = relative_error(got, ref);
          row.guard_tripped = false;
        } catch (const NumericalError&) {
          row.messages = ledger.total();
          row.achieved_error = std::numeric_limits<double>::quiet_NaN();
          row.guard_tripped = true;
          break;
        }
        if (row.achieved_error <= target) break;
        eps /= 8.0;
        if (eps < 1e-18) {
          row.guard_tripped = true;
          break;
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<Exp4Row> run_exp4(const ExperimentConfig& c) {
  const int order = c.order.value_or(15);
  const double mu = c.resolved_mu();

  SnapshotStream stream;
  std::size_t start;
  if (!c.input_path.empty()) {
    stream = load_stream(c);
    start = c.window_lo.value_or(c.reverse ? 0 : std::min<std::size_t>(100, stream.num_snapshots()));
  } else if (c.recipe) {
    stream = make_synthetic_stream(*c.recipe, c.graph_seed, c.horizon, c.snapshot_edges);
    if (c.reverse) stream = reverse_time(stream);
    start = c.window_lo.value_or(c.reverse ? 0 : 1);
  } else {
    throw std::invalid_argument("config: need --input PATH or --synthetic MODEL,N,PARAM");
  }
  if (start + c.horizon > stream.num_snapshots()) {
    throw std::invalid_argument("exp4: horizon " + std::to_string(c.horizon) +
                                " from snapshot " + std::to_string(start) +
                                " exceeds the stream's " +
                                std::to_string(stream.num_snapshots()) + " snapshots");
  }

  Graph g_prev = snapshot_graph(stream, start);
  OperatorSpec spec_track = make_operator(c.op_kind, c.op_params, g_prev, c.dense_limit);
  const ScoreVector y = seed_vector(g_prev, child_seed(c.rng_seed, 0));

  ScoreVector tracked = Reference(g_prev, spec_track, mu, c.dense_limit).solve(y);

  std::vector<Exp4Row> rows;
  {
    MessageLedger discard;
    discard.tau = c.tau_msg;
    const ScoreVector scratch0 = solve_scratch(g_prev, spec_track, mu, y, order, discard);
    const ScoreVector oracle0 = tracked;
    rows.push_back({0, 0.0, relative_error(scratch0, oracle0), 0, false});
  }

  for (std::size_t k = 1; k <= c.horizon; ++k) {
    const GraphDelta delta = delta_between(stream, start + k - 1, start + k);
    const Graph g_cur = apply_delta(g_prev, delta);
    const OperatorSpec spec_cur = make_operator(c.op_kind, c.op_params, g_cur, c.dense_limit);
    const ScoreVector oracle = Reference(g_cur, spec_cur, mu, c.dense_limit).solve(y);

    Exp4Row row;
    row.snapshot = k;
    row.perturbation_size = delta.changes.size();
    MessageLedger ledger;
    ledger.tau = c.tau_msg;
    try {
      tracked = update_local(g_prev, g_cur, spec_track, mu, tracked, order, ledger,
                             c.dense_limit)
                    .scores;
      spec_track = rebind_operator(spec_track, g_cur, c.dense_limit);
    } catch (const LambdaBoundViolation&) {
      // The evolved graph broke the stored spectral bound: re-anchor with a
      // fresh from-scratch estimate at the same budget.
      MessageLedger discard;
      discard.tau = c.tau_msg;
      tracked = solve_scratch(g_cur, spec_cur, mu, y, order, discard);
      spec_track = spec_cur;
      row.fell_back_to_scratch = true;
    }
    MessageLedger discard;
    discard.tau = c.tau_msg;
    const ScoreVector scratch = solve_scratch(g_cur, spec_cur, mu, y, order, discard);

    row.rel_error_tracked = relative_error(tracked, oracle);
    row.rel_error_scratch = relative_error(scratch, oracle);
    rows.push_back(row);
    g_prev = g_cur;
  }
  return rows;
}

CsvTable solve_csv(const SolveOutcome& outcome) {
  CsvTable t;
  t.header = {"order", "rel_error", "messages"};
  t.rows.push_back({std::to_string(outcome.order), format_double(outcome.rel_error),
                    std::to_string(outcome.messages)});
  return t;
}

CsvTable exp1_csv(const std::vector<Exp1Row>& rows) {
  CsvTable t;
  t.header = {"method", "operator", "order", "messages_mean", "mean_rel_error", "stderr"};
  for (const auto& r : rows) {
    t.rows.push_back({r.method, r.op, std::to_string(r.order), format_double(r.messages_mean),
                      format_double(r.mean_rel_error), format_double(r.stderr_mean)});
  }
  return t;
}

CsvTable exp2_csv(const Exp2Outcome& outcome) {
  CsvTable t;
  t.header = {"perturbation_edges", "messages_update", "messages_scratch",
              "update_exceeds_scratch"};
  for (const auto& r : outcome.rows) {
    t.rows.push_back({std::to_string(r.perturbation_edges), std::to_string(r.messages_update),
                      std::to_string(r.messages_scratch),
                      r.update_exceeds_scratch ? "1" : "0"});
  }
  return t;
}

CsvTable exp3_csv(const std::vector<Exp3Row>& rows) {
  CsvTable t;
  t.header = {"method", "error_target", "messages", "achieved_error", "guard_tripped"};
  for (const auto& r : rows) {
    t.rows.push_back({r.method, format_double(r.error_target), std::to_string(r.messages),
                      format_double(r.achieved_error), r.guard_tripped ? "1" : "0"});
  }
  return t;
}

CsvTable exp4_csv(const std::vector<Exp4Row>& rows) {
  CsvTable t;
  t.header = {"snapshot", "rel_error_tracked", "rel_error_scratch", "perturbation_size",
              "fallback_scratch"};
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(r.snapshot), format_double(r.rel_error_tracked),
                      format_double(r.rel_error_scratch), std::to_string(r.perturbation_size),
                      r.fell_back_to_scratch ? "1" : "0"});
  }
  return t;
}

}  // namespace chebypr

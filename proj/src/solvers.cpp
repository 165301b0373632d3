#include "chebypr/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "chebypr/errors.hpp"

namespace chebypr {

namespace {

constexpr int kRwrIterationCap = 1'000'000;

std::uint64_t active_degree_sum(const Graph& g, const ScoreVector& x, double tau) {
  std::uint64_t s = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (std::abs(x[u]) > tau) s += g.degree_count(u);
  }
  return s;
}

void check_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument(std::string(who) + ": alpha must lie in (0,1)");
  }
}

}  // namespace

DenseSolver::DenseSolver(const Graph& g, const OperatorSpec& spec, double mu,
                         std::size_t dense_limit)
    : mu_(mu) {
  if (g.num_nodes() > dense_limit) {
    throw std::invalid_argument("DenseSolver: num_nodes " + std::to_string(g.num_nodes()) +
                                " exceeds dense limit " + std::to_string(dense_limit));
  }
  if (!(mu > 0.0)) throw std::invalid_argument("DenseSolver: mu must be positive");
  system_ = dense_operator_matrix(spec, g);
  system_ += mu * Eigen::MatrixXd::Identity(system_.rows(), system_.cols());
  lu_.compute(system_);
}

ScoreVector DenseSolver::solve(const ScoreVector& y) const {
  if (static_cast<Eigen::Index>(y.size()) != system_.rows()) {
    throw std::invalid_argument("DenseSolver::solve: dimension mismatch");
  }
  Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
  Eigen::VectorXd rhs = mu_ * yv;
  Eigen::VectorXd p = lu_.solve(rhs);
  const double rhs_norm = rhs.norm();
  if (rhs_norm > 0.0) {
    const double res = (system_ * p - rhs).norm() / rhs_norm;
    if (!(res < 1e-6)) {
      throw NumericalError("dense solve failed: (R + mu I) is numerically singular");
    }
  }
  return ScoreVector(p.data(), p.data() + p.size());
}

ScoreVector dense_oracle(const Graph& g, const OperatorSpec& spec, double mu,
                         const ScoreVector& y, std::size_t dense_limit) {
  return DenseSolver(g, spec, mu, dense_limit).solve(y);
}

ScoreVector solve_scratch(const Graph& g, const OperatorSpec& spec, double mu,
                          const ScoreVector& y, int order, MessageLedger& ledger) {
  const ChebyCoefficients coeffs = compute_coefficients(mu, spec.lambda_max, order);
  return cheby_apply(g, spec, coeffs, y, ledger);
}

ScoreVector compute_residual(const OperatorSpec& spec, const Graph& g_old, const Graph& g_new,
                             const DiffusionParams& params, const ScoreVector& pr_old) {
  ScoreVector r = operator_delta_apply(spec, g_old, g_new, pr_old);
  for (auto& e : r) e *= params.psi;
  return r;
}

UpdateResult update_local(const Graph& g_old, const Graph& g_new, const OperatorSpec& spec,
                          double mu, const ScoreVector& pr_old, int order,
                          MessageLedger& ledger, std::size_t dense_limit) {
  const DiffusionParams params = make_diffusion_params(mu, spec.lambda_max);
  const OperatorSpec spec_new = rebind_operator(spec, g_new, dense_limit);
  if (spec.kind != OperatorKind::standard && spec.kind != OperatorKind::iterated) {
    const double est = estimate_spectral_radius(spec_new, g_new);
    if (est > spec.lambda_max) {
      throw LambdaBoundViolation("update_local: evolved graph's spectral-radius estimate " +
                                 std::to_string(est) + " exceeds the stored bound " +
                                 std::to_string(spec.lambda_max));
    }
  }

  const ScoreVector r = compute_residual(spec, g_old, g_new, params, pr_old);
  const ChebyCoefficients coeffs = compute_coefficients(mu, spec.lambda_max, order);
  const ScoreVector diffused = cheby_apply(g_new, spec_new, coeffs, r, ledger);

  UpdateResult out;
  out.residual_support_size = support_of(r).size();
  out.scores.resize(pr_old.size());
  const double inv_rho = 1.0 / params.rho;
  for (std::size_t i = 0; i < pr_old.size(); ++i) {
    out.scores[i] = pr_old[i] + inv_rho * diffused[i];
  }
  return out;
}

ScoreVector warm_restart_power(const Graph& g_new, const OperatorSpec& spec,
                               const DiffusionParams& params, const ScoreVector& y,
                               const ScoreVector& p0, int steps, MessageLedger& ledger) {
  if (steps < 0) throw std::invalid_argument("warm_restart_power: steps must be >= 0");
  if (y.size() != g_new.num_nodes() || p0.size() != g_new.num_nodes()) {
    throw std::invalid_argument("warm_restart_power: dimension mismatch");
  }
  ScoreVector p = p0;
  for (int t = 0; t < steps; ++t) {
    ledger.add_round(active_degree_sum(g_new, p, ledger.tau));
    ScoreVector sp = normalized_apply(spec, g_new, p);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = params.rho * y[i] + params.psi * sp[i];
  }
  return p;
}

ScoreVector rwr_update(const Graph& g_old, const Graph& g_new, double alpha,
                       const ScoreVector& pr_old, const RwrStop& stop, MessageLedger& ledger) {
  check_alpha(alpha, "rwr_update");
  if (stop.error_target.has_value() == stop.steps.has_value()) {
    throw std::invalid_argument("rwr_update: set exactly one of error_target and steps");
  }

  ScoreVector r = transition_delta_apply(g_old, g_new, pr_old);
  for (auto& e : r) e *= alpha;

  ScoreVector p = r;
  const int budget = stop.steps.value_or(kRwrIterationCap);
  for (int t = 0; t < budget; ++t) {
    ledger.add_round(active_degree_sum(g_new, p, ledger.tau));
    ScoreVector pt = transition_transpose_apply(g_new, p);
    double change_sq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double next = (1.0 - alpha) * r[i] + alpha * pt[i];
      const double d = next - p[i];
      change_sq += d * d;
      p[i] = next;
    }
    if (stop.error_target && std::sqrt(change_sq) < *stop.error_target / 10.0) break;
  }

  ScoreVector out(pr_old.size());
  const double scale = 1.0 / (1.0 - alpha);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pr_old[i] + scale * p[i];
  return out;
}

ScoreVector push_update(const Graph& g_old, const Graph& g_new, double alpha,
                        const ScoreVector& pr_old, double epsilon, MessageLedger& ledger,
                        std::uint64_t max_pushes, const PushObserver& observer) {
  check_alpha(alpha, "push_update");
  if (!(epsilon > 0.0)) throw std::invalid_argument("push_update: epsilon must be positive");

  PushState state;
  state.approximation = pr_old;
  state.epsilon = epsilon;
  state.residual = transition_delta_apply(g_old, g_new, pr_old);
  for (auto& e : state.residual) e *= alpha;
  ScoreVector& r = state.residual;

  // Max-heap on |r_u| with lazy invalidation; ties go to the smaller id.
  struct HeapEntry {
    double value;
    NodeId id;
  };
  auto cmp = [](const HeapEntry& a, const HeapEntry& b) {
    return a.value != b.value ? a.value < b.value : a.id > b.id;
  };
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, decltype(cmp)> heap(cmp);
  for (NodeId u = 0; u < g_new.num_nodes(); ++u) {
    if (r[u] != 0.0) heap.push({std::abs(r[u]), u});
  }

  std::uint64_t pushes = 0;
  while (!heap.empty()) {
    const HeapEntry top = heap.top();
    heap.pop();
    if (top.value != std::abs(r[top.id])) continue;  // stale
    if (top.value < epsilon) break;                  // fresh maximum below threshold
    if (pushes >= max_pushes) {
      throw NumericalError("push_update: aborted after " + std::to_string(max_pushes) +
                           " pushes without draining the residual below epsilon");
    }

    const NodeId u = top.id;
    const double mass = r[u];
    state.approximation[u] += mass;
    r[u] = 0.0;
    const double du = g_new.degree(u);
    if (du > 0.0) {
      const double scale = alpha * mass / du;
      for (const auto& nb : g_new.neighbors(u)) {
        r[nb.id] += scale * nb.weight;
        if (r[nb.id] != 0.0) heap.push({std::abs(r[nb.id]), nb.id});
      }
    }
    ledger.add_round(g_new.degree_count(u));
    ++pushes;
    if (observer) observer(state, pushes);
  }
  return state.approximation;
}

}  // namespace chebypr

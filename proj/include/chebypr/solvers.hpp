#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "chebypr/chebyshev.hpp"
#include "chebypr/graph.hpp"
#include "chebypr/operators.hpp"

namespace chebypr {

/// Dense factorization of (R + mu I), reusable across right-hand sides.
/// This is the ground truth the iterative paths are tested against.
class DenseSolver {
 public:
  DenseSolver(const Graph& g, const OperatorSpec& spec, double mu,
              std::size_t dense_limit = kDefaultDenseLimit);

  /// p = mu (R + mu I)^{-1} y. Throws NumericalError if the factorization
  /// turns out numerically singular (possible for the recentered kind when
  /// mu falls inside its spectrum).
  ScoreVector solve(const ScoreVector& y) const;

 private:
  Eigen::MatrixXd system_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double mu_;
};

/// One-shot dense solve of (R + mu I) p = mu y.
ScoreVector dense_oracle(const Graph& g, const OperatorSpec& spec, double mu,
                         const ScoreVector& y, std::size_t dense_limit = kDefaultDenseLimit);

/// From-scratch diffusion solve at truncation order K (coefficients
/// computed internally for spec.lambda_max).
ScoreVector solve_scratch(const Graph& g, const OperatorSpec& spec, double mu,
                          const ScoreVector& y, int order, MessageLedger& ledger);

/// r = psi (S~ - S) pr_old, the localized seed whose diffusion on the new
/// graph corrects pr_old.
ScoreVector compute_residual(const OperatorSpec& spec, const Graph& g_old, const Graph& g_new,
                             const DiffusionParams& params, const ScoreVector& pr_old);

struct UpdateResult {
  ScoreVector scores;
  std::size_t residual_support_size = 0;
};

/// Local update: scores = pr_old + (1/rho) * [order-K diffusion of r on
/// g_new]. The ledger sees only the localized diffusion rounds, whose
/// initial active set is support(r). For operators with estimated spectral
/// bounds, throws LambdaBoundViolation when the evolved graph's estimate
/// exceeds the stored bound (the coefficients must be shared by both
/// graphs); callers may fall back to a from-scratch solve.
UpdateResult update_local(const Graph& g_old, const Graph& g_new, const OperatorSpec& spec,
                          double mu, const ScoreVector& pr_old, int order,
                          MessageLedger& ledger,
                          std::size_t dense_limit = kDefaultDenseLimit);

/// T steps of p <- rho y + psi S p on g_new starting from p0. Converges to
/// the mu-solve as T grows; used as a correctness baseline.
ScoreVector warm_restart_power(const Graph& g_new, const OperatorSpec& spec,
                               const DiffusionParams& params, const ScoreVector& y,
                               const ScoreVector& p0, int steps, MessageLedger& ledger);

/// Stopping rule for rwr_update: exactly one of the two must be set.
struct RwrStop {
  std::optional<double> error_target = std::nullopt;  // successive change < target/10
  std::optional<int> steps = std::nullopt;            // fixed iteration budget
};

/// Random-walk-with-restart baseline (standard kind only): solves the
/// localized seed alpha (P~^T - P^T) pr_old by power iteration on g_new and
/// adds the correction scaled by 1/(1-alpha).
ScoreVector rwr_update(const Graph& g_old, const Graph& g_new, double alpha,
                       const ScoreVector& pr_old, const RwrStop& stop, MessageLedger& ledger);

/// Approximation/residual pair maintained by the push baseline.
struct PushState {
  ScoreVector approximation;
  ScoreVector residual;
  double epsilon = 0.0;
};

using PushObserver = std::function<void(const PushState& state, std::uint64_t pushes)>;

inline constexpr std::uint64_t kDefaultMaxPushes = 100'000'000;

/// Gauss-Southwell push baseline (standard kind only). Starts from
/// p = pr_old, r = alpha (P~^T - P^T) pr_old and repeatedly relaxes the
/// largest-|r| entry (ties to the smallest id) until ||r||_inf < epsilon.
/// Each push costs deg(u) ledger messages. Throws NumericalError when
/// max_pushes is exhausted. The observer, when set, sees the state after
/// every push.
ScoreVector push_update(const Graph& g_old, const Graph& g_new, double alpha,
                        const ScoreVector& pr_old, double epsilon, MessageLedger& ledger,
                        std::uint64_t max_pushes = kDefaultMaxPushes,
                        const PushObserver& observer = {});

}  // namespace chebypr

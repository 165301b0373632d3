#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string_view>

#include "chebypr/graph.hpp"

namespace chebypr {

inline constexpr std::size_t kDefaultDenseLimit = 2000;

/// Reference-operator family. `standard` is the random-walk Laplacian
/// LD^{-1} acting as x - P^T x; `iterated` applies it m times; `dual` is
/// D^{-sigma} L D^{sigma-1}; the gamma kinds replace L by L^gamma (dense,
/// from an eigendecomposition); `recentered` is -CWC with the centering
/// matrix C = I - (1/N) 11^T and is supported for dense from-scratch
/// solves only.
enum class OperatorKind {
  standard,
  gamma,
  iterated,
  dual,
  gamma_dual,
  recentered,
};

const char* operator_kind_name(OperatorKind kind);
std::optional<OperatorKind> operator_kind_from_name(std::string_view name);

struct OperatorParams {
  double gamma = 1.0;  // gamma kinds, > 0
  double sigma = 0.0;  // dual kinds
  int m = 1;           // iterated kind, >= 1
};

/// A reference operator bound to a graph. For the gamma kinds `dense`
/// holds L^gamma and `dense_diag` its diagonal D_gamma; for the recentered
/// kind `dense` is the operator itself. `lambda_max` is an upper bound on
/// the spectral radius: the analytic bound for standard/iterated kinds, a
/// 1%-inflated Krylov estimate otherwise.
struct OperatorSpec {
  OperatorKind kind = OperatorKind::standard;
  OperatorParams params;
  double lambda_max = 2.0;
  std::shared_ptr<const Eigen::MatrixXd> dense;          // set for dense kinds
  std::shared_ptr<const std::vector<double>> dense_diag; // D_gamma for gamma kinds

  bool is_dense_kind() const {
    return kind == OperatorKind::gamma || kind == OperatorKind::gamma_dual ||
           kind == OperatorKind::recentered;
  }
};

/// Scalar coefficients of the normalized diffusion recursion
/// p <- rho y + psi S p, with alpha = 1/(mu+1), rho = 2mu/(2mu+lambda_max),
/// psi = -lambda_max/(2mu+lambda_max) and phi = lambda_max/2.
/// rho - psi == 1 holds exactly.
struct DiffusionParams {
  double mu;
  double alpha;
  double rho;
  double psi;
  double phi;
};

DiffusionParams make_diffusion_params(double mu, double lambda_max);

/// alpha = 1/(mu+1) change of variable, both directions.
double mu_from_alpha(double alpha);
double alpha_from_mu(double mu);

/// Builds an operator for `g`. Dense kinds require
/// g.num_nodes() <= dense_limit and are backed by an eigendecomposition of
/// the combinatorial Laplacian (eigenvalues below 1e-12 are clamped to zero
/// before powering).
OperatorSpec make_operator(OperatorKind kind, const OperatorParams& params, const Graph& g,
                           std::size_t dense_limit = kDefaultDenseLimit);

/// Rebinds `spec` to another graph, keeping lambda_max fixed (dense kinds
/// rebuild their payload). Used when updating across snapshots, where the
/// diffusion coefficients must stay shared between both graphs.
OperatorSpec rebind_operator(const OperatorSpec& spec, const Graph& g,
                             std::size_t dense_limit = kDefaultDenseLimit);

/// y = R x.
ScoreVector operator_apply(const OperatorSpec& spec, const Graph& g, const ScoreVector& x);

/// y = S x = (2/lambda_max) R x - x, the spectrum-normalized action.
ScoreVector normalized_apply(const OperatorSpec& spec, const Graph& g, const ScoreVector& x);

/// y = (S~ - S) x between two same-sized graphs, touching only rows in
/// touched u N_old(touched) u N_new(touched) for the sparse kinds; entries
/// outside the perturbed vicinity are exact zeros. Gamma kinds fall back to
/// a dense difference; the recentered kind is rejected (its centering term
/// is global, so the difference is not local).
ScoreVector operator_delta_apply(const OperatorSpec& spec, const Graph& g_old,
                                 const Graph& g_new, const ScoreVector& x);

/// y = (P~^T - P^T) x, the localized transition difference used by the
/// random-walk baselines; support confined to the perturbed vicinity.
ScoreVector transition_delta_apply(const Graph& g_old, const Graph& g_new,
                                   const ScoreVector& x);

/// Spectral-radius estimate of R (uninflated). Every supported kind is
/// similar to a symmetric core, so this runs a Lanczos iteration on that
/// core: deterministic (seeded with the normalized all-ones vector plus
/// delta_0), at most 200 matrix applications, early exit once the extremal
/// Ritz value is stable to 1e-8. Plain power iteration stalls well short
/// of the radius on small-spectral-gap graphs, which would break the bound.
double estimate_spectral_radius(const OperatorSpec& spec, const Graph& g);

/// Dense N x N matrix of R, for oracle solves and brute-force checks.
Eigen::MatrixXd dense_operator_matrix(const OperatorSpec& spec, const Graph& g);

}  // namespace chebypr

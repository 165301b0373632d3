#include "chebypr/operators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chebypr/errors.hpp"

namespace chebypr {

namespace {

constexpr int kKrylovBudget = 200;        // matrix applications per estimate
constexpr double kKrylovTol = 1e-8;
constexpr double kEigenvalueClamp = 1e-12;
constexpr double kBoundInflation = 1.01;

// d^e under the isolated-node convention: zero degree maps to zero.
double deg_pow(double d, double e) {
  return d > 0.0 ? std::pow(d, e) : 0.0;
}

// Inverse entries of D_gamma; clamped values count as isolated.
double diag_inv_pow(double d, double e) {
  return d > kEigenvalueClamp ? std::pow(d, e) : 0.0;
}

ScoreVector standard_apply(const Graph& g, const ScoreVector& x) {
  const NodeId n = g.num_nodes();
  ScoreVector scaled(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    const double d = g.degree(v);
    if (d > 0.0) scaled[v] = x[v] / d;
  }
  ScoreVector out(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    double s = 0.0;
    for (const auto& nb : g.neighbors(u)) s += nb.weight * scaled[nb.id];
    out[u] = x[u] - s;
  }
  return out;
}

ScoreVector dual_apply(const Graph& g, double sigma, const ScoreVector& x) {
  const NodeId n = g.num_nodes();
  ScoreVector scaled(n, 0.0);
  for (NodeId v = 0; v < n; ++v) scaled[v] = deg_pow(g.degree(v), sigma - 1.0) * x[v];
  ScoreVector out(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    const double du = g.degree(u);
    if (du <= 0.0) continue;  // zero row of L
    double s = 0.0;
    for (const auto& nb : g.neighbors(u)) s += nb.weight * scaled[nb.id];
    out[u] = x[u] - deg_pow(du, -sigma) * s;
  }
  return out;
}

ScoreVector gamma_kind_apply(const OperatorSpec& spec, const ScoreVector& x) {
  const Eigen::MatrixXd& lg = *spec.dense;
  const std::vector<double>& dg = *spec.dense_diag;
  const Eigen::Index n = lg.rows();
  Eigen::VectorXd scaled(n);
  const double in_exp =
      spec.kind == OperatorKind::gamma ? -1.0 : spec.params.sigma - 1.0;
  for (Eigen::Index i = 0; i < n; ++i) scaled[i] = diag_inv_pow(dg[i], in_exp) * x[i];
  Eigen::VectorXd y = lg * scaled;
  if (spec.kind == OperatorKind::gamma_dual) {
    for (Eigen::Index i = 0; i < n; ++i) y[i] *= diag_inv_pow(dg[i], -spec.params.sigma);
  }
  return ScoreVector(y.data(), y.data() + y.size());
}

// Per-row value of the standard action, reading degrees from `g`.
double standard_row(const Graph& g, NodeId u, const ScoreVector& x) {
  double s = 0.0;
  for (const auto& nb : g.neighbors(u)) {
    const double d = g.degree(nb.id);
    if (d > 0.0) s += nb.weight * x[nb.id] / d;
  }
  return x[u] - s;
}

double dual_row(const Graph& g, double sigma, NodeId u, const ScoreVector& x) {
  const double du = g.degree(u);
  if (du <= 0.0) return 0.0;
  double s = 0.0;
  for (const auto& nb : g.neighbors(u)) {
    s += nb.weight * deg_pow(g.degree(nb.id), sigma - 1.0) * x[nb.id];
  }
  return x[u] - deg_pow(du, -sigma) * s;
}

// Rows whose operator action can differ between the graphs: the touched
// nodes plus their neighborhoods in either graph.
std::vector<NodeId> affected_rows(const Graph& g_old, const Graph& g_new) {
  std::vector<NodeId> rows = differing_rows(g_old, g_new);
  std::vector<NodeId> out = rows;
  for (NodeId v : rows) {
    for (const auto& nb : g_old.neighbors(v)) out.push_back(nb.id);
    for (const auto& nb : g_new.neighbors(v)) out.push_back(nb.id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// (R~ - R) x for a row-local operator action; exact zeros off the
// perturbed vicinity.
template <typename RowFn>
ScoreVector local_row_diff(const Graph& g_old, const Graph& g_new, const ScoreVector& x,
                           RowFn&& row) {
  ScoreVector out(g_old.num_nodes(), 0.0);
  for (NodeId u : affected_rows(g_old, g_new)) {
    out[u] = row(g_new, u, x) - row(g_old, u, x);
  }
  return out;
}

Eigen::VectorXd krylov_seed(Eigen::Index n) {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  v[0] += 1.0;
  v /= v.norm();
  return v;
}

double tridiagonal_radius(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) t(i, i) = alpha[i];
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    t(i, i + 1) = beta[i];
    t(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t, Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return std::max(std::abs(ev[0]), std::abs(ev[m - 1]));
}

// Extremal |eigenvalue| of a self-adjoint operator via Lanczos with full
// reorthogonalization. Deterministic seed; at most kKrylovBudget applies.
template <typename ApplyFn>
double lanczos_radius(Eigen::Index n, ApplyFn&& apply) {
  if (n == 0) return 0.0;
  const int max_steps = static_cast<int>(std::min<Eigen::Index>(kKrylovBudget, n));
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;
  basis.push_back(krylov_seed(n));

  Eigen::VectorXd w = apply(basis[0]);
  if (!w.allFinite()) throw NumericalError("spectral estimate diverged (non-finite iterate)");
  alpha.push_back(w.dot(basis[0]));
  w -= alpha[0] * basis[0];

  double prev = std::numeric_limits<double>::infinity();
  for (int j = 1; j < max_steps; ++j) {
    const double b = w.norm();
    if (b < 1e-14) break;  // exact invariant subspace
    Eigen::VectorXd v = w / b;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) v -= q.dot(v) * q;
      const double nv = v.norm();
      if (nv < 1e-14) return tridiagonal_radius(alpha, beta);
      v /= nv;
    }
    beta.push_back(b);
    basis.push_back(v);
    w = apply(v);
    if (!w.allFinite()) throw NumericalError("spectral estimate diverged (non-finite iterate)");
    w -= b * basis[j - 1];
    alpha.push_back(w.dot(v));
    w -= alpha[j] * v;

    if (j % 8 == 0 || j + 1 == max_steps) {
      const double cur = tridiagonal_radius(alpha, beta);
      if (std::abs(cur - prev) <= kKrylovTol * std::max(1.0, cur)) return cur;
      prev = cur;
    }
  }
  return tridiagonal_radius(alpha, beta);
}

// Symmetric core D^{-1/2} L D^{-1/2}, similar to the standard and dual
// actions away from isolated nodes.
Eigen::VectorXd laplacian_core_apply(const Graph& g, const Eigen::VectorXd& x) {
  const NodeId n = g.num_nodes();
  Eigen::VectorXd scaled(n);
  for (NodeId v = 0; v < n; ++v) scaled[v] = deg_pow(g.degree(v), -0.5) * x[v];
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (NodeId u = 0; u < n; ++u) {
    const double du = g.degree(u);
    if (du <= 0.0) continue;
    double s = du * scaled[u];
    for (const auto& nb : g.neighbors(u)) s -= nb.weight * scaled[nb.id];
    out[u] = deg_pow(du, -0.5) * s;
  }
  return out;
}

// D_gamma^{-1/2} L^gamma D_gamma^{-1/2}, similar to both gamma kinds.
Eigen::VectorXd gamma_core_apply(const Eigen::MatrixXd& lg, const std::vector<double>& dg,
                                 const Eigen::VectorXd& x) {
  const Eigen::Index n = lg.rows();
  Eigen::VectorXd scaled(n);
  for (Eigen::Index i = 0; i < n; ++i) scaled[i] = diag_inv_pow(dg[i], -0.5) * x[i];
  Eigen::VectorXd y = lg * scaled;
  for (Eigen::Index i = 0; i < n; ++i) y[i] *= diag_inv_pow(dg[i], -0.5);
  return y;
}

double core_radius(const Graph& g) {
  return lanczos_radius(g.num_nodes(),
                        [&](const Eigen::VectorXd& v) { return laplacian_core_apply(g, v); });
}

Eigen::MatrixXd dense_laplacian(const Graph& g) {
  const NodeId n = g.num_nodes();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& nb : g.neighbors(u)) lap(u, nb.id) -= nb.weight;
    lap(u, u) += g.degree(u);
  }
  return lap;
}

// L^gamma via symmetric eigendecomposition, clamping small eigenvalues to
// zero before powering so numerically negative ones cannot go complex.
Eigen::MatrixXd laplacian_power(const Graph& g, double gamma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense_laplacian(g));
  if (eig.info() != Eigen::Success) {
    throw NumericalError("Laplacian eigendecomposition failed");
  }
  Eigen::VectorXd ev = eig.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    ev[i] = ev[i] < kEigenvalueClamp ? 0.0 : std::pow(ev[i], gamma);
  }
  return eig.eigenvectors() * ev.asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::MatrixXd recentered_payload(const Graph& g) {
  const NodeId n = g.num_nodes();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (NodeId u = 0; u < n; ++u) {
    for (const auto& nb : g.neighbors(u)) w(u, nb.id) = nb.weight;
  }
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) -
      Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  return -centering * w * centering;
}

void attach_dense_payload(OperatorSpec& spec, const Graph& g) {
  if (spec.kind == OperatorKind::recentered) {
    spec.dense = std::make_shared<Eigen::MatrixXd>(recentered_payload(g));
    spec.dense_diag.reset();
    return;
  }
  auto lg = std::make_shared<Eigen::MatrixXd>(laplacian_power(g, spec.params.gamma));
  auto dg = std::make_shared<std::vector<double>>(lg->rows());
  for (Eigen::Index i = 0; i < lg->rows(); ++i) (*dg)[i] = (*lg)(i, i);
  spec.dense = std::move(lg);
  spec.dense_diag = std::move(dg);
}

double dense_kind_radius(const OperatorSpec& spec) {
  if (spec.kind == OperatorKind::recentered) {
    const Eigen::MatrixXd& r = *spec.dense;
    return lanczos_radius(r.rows(), [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
      return r * v;
    });
  }
  return lanczos_radius(spec.dense->rows(), [&](const Eigen::VectorXd& v) {
    return gamma_core_apply(*spec.dense, *spec.dense_diag, v);
  });
}

void check_params(OperatorKind kind, const OperatorParams& params) {
  if ((kind == OperatorKind::gamma || kind == OperatorKind::gamma_dual) &&
      !(params.gamma > 0.0)) {
    throw std::invalid_argument("make_operator: gamma must be positive");
  }
  if (kind == OperatorKind::iterated && params.m < 1) {
    throw std::invalid_argument("make_operator: iterated kind needs m >= 1");
  }
}

void check_dense_payload(const OperatorSpec& spec, const Graph& g, const char* who) {
  if (!spec.dense || (spec.kind != OperatorKind::recentered && !spec.dense_diag)) {
    throw std::invalid_argument(std::string(who) + ": dense payload missing");
  }
  if (spec.dense->rows() != static_cast<Eigen::Index>(g.num_nodes())) {
    throw std::invalid_argument(std::string(who) + ": spec not built for this graph");
  }
}

}  // namespace

const char* operator_kind_name(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::standard: return "standard";
    case OperatorKind::gamma: return "gamma";
    case OperatorKind::iterated: return "iterated";
    case OperatorKind::dual: return "dual";
    case OperatorKind::gamma_dual: return "gamma-dual";
    case OperatorKind::recentered: return "recentered";
  }
  return "?";
}

std::optional<OperatorKind> operator_kind_from_name(std::string_view name) {
  if (name == "standard") return OperatorKind::standard;
  if (name == "gamma") return OperatorKind::gamma;
  if (name == "iterated") return OperatorKind::iterated;
  if (name == "dual") return OperatorKind::dual;
  if (name == "gamma-dual" || name == "gamma_dual") return OperatorKind::gamma_dual;
  if (name == "recentered") return OperatorKind::recentered;
  return std::nullopt;
}

DiffusionParams make_diffusion_params(double mu, double lambda_max) {
  if (!(mu > 0.0)) throw std::invalid_argument("make_diffusion_params: mu must be positive");
  if (!(lambda_max > 0.0)) {
    throw std::invalid_argument("make_diffusion_params: lambda_max must be positive");
  }
  DiffusionParams p{};
  p.mu = mu;
  p.alpha = alpha_from_mu(mu);
  p.rho = 2.0 * mu / (2.0 * mu + lambda_max);
  p.psi = p.rho - 1.0;  // equals -lambda_max/(2mu+lambda_max); keeps rho - psi == 1 exact
  p.phi = lambda_max / 2.0;
  return p;
}

double mu_from_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("alpha must lie in (0,1]");
  }
  const long double a = alpha;
  return static_cast<double>((1.0L - a) / a);
}

double alpha_from_mu(double mu) {
  if (!(mu >= 0.0)) throw std::invalid_argument("mu must be nonnegative");
  return static_cast<double>(1.0L / (static_cast<long double>(mu) + 1.0L));
}

OperatorSpec make_operator(OperatorKind kind, const OperatorParams& params, const Graph& g,
                           std::size_t dense_limit) {
  check_params(kind, params);
  OperatorSpec spec;
  spec.kind = kind;
  spec.params = params;

  switch (kind) {
    case OperatorKind::standard:
      spec.lambda_max = 2.0;
      return spec;
    case OperatorKind::iterated:
      spec.lambda_max = std::pow(2.0, params.m);
      return spec;
    case OperatorKind::dual: {
      const double est = core_radius(g);
      spec.lambda_max = est > 0.0 ? kBoundInflation * est : 1.0;
      return spec;
    }
    case OperatorKind::gamma:
    case OperatorKind::gamma_dual:
    case OperatorKind::recentered: {
      if (g.num_nodes() > dense_limit) {
        throw std::invalid_argument(std::string("make_operator: kind '") +
                                    operator_kind_name(kind) + "' needs num_nodes <= " +
                                    std::to_string(dense_limit));
      }
      attach_dense_payload(spec, g);
      const double est = dense_kind_radius(spec);
      spec.lambda_max = est > 0.0 ? kBoundInflation * est : 1.0;
      return spec;
    }
  }
  throw std::invalid_argument("make_operator: unknown kind");
}

OperatorSpec rebind_operator(const OperatorSpec& spec, const Graph& g,
                             std::size_t dense_limit) {
  OperatorSpec out = spec;
  if (spec.is_dense_kind()) {
    if (g.num_nodes() > dense_limit) {
      throw std::invalid_argument("rebind_operator: graph exceeds dense limit");
    }
    attach_dense_payload(out, g);
  }
  return out;
}

ScoreVector operator_apply(const OperatorSpec& spec, const Graph& g, const ScoreVector& x) {
  if (x.size() != g.num_nodes()) {
    throw std::invalid_argument("operator_apply: dimension mismatch");
  }
  switch (spec.kind) {
    case OperatorKind::standard:
      return standard_apply(g, x);
    case OperatorKind::iterated: {
      ScoreVector y = x;
      for (int i = 0; i < spec.params.m; ++i) y = standard_apply(g, y);
      return y;
    }
    case OperatorKind::dual:
      return dual_apply(g, spec.params.sigma, x);
    case OperatorKind::gamma:
    case OperatorKind::gamma_dual:
      check_dense_payload(spec, g, "operator_apply");
      return gamma_kind_apply(spec, x);
    case OperatorKind::recentered: {
      check_dense_payload(spec, g, "operator_apply");
      Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
      Eigen::VectorXd y = *spec.dense * xv;
      return ScoreVector(y.data(), y.data() + y.size());
    }
  }
  throw std::invalid_argument("operator_apply: unknown kind");
}

ScoreVector normalized_apply(const OperatorSpec& spec, const Graph& g, const ScoreVector& x) {
  ScoreVector y = operator_apply(spec, g, x);
  const double scale = 2.0 / spec.lambda_max;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = scale * y[i] - x[i];
  return y;
}

ScoreVector operator_delta_apply(const OperatorSpec& spec, const Graph& g_old,
                                 const Graph& g_new, const ScoreVector& x) {
  if (g_old.num_nodes() != g_new.num_nodes()) {
    throw std::invalid_argument("operator_delta_apply: graphs differ in node count");
  }
  if (x.size() != g_old.num_nodes()) {
    throw std::invalid_argument("operator_delta_apply: dimension mismatch");
  }
  const double scale = 2.0 / spec.lambda_max;

  switch (spec.kind) {
    case OperatorKind::standard: {
      ScoreVector d = local_row_diff(g_old, g_new, x, [](const Graph& g, NodeId u,
                                                         const ScoreVector& v) {
        return standard_row(g, u, v);
      });
      for (auto& e : d) e *= scale;
      return d;
    }
    case OperatorKind::dual: {
      const double sigma = spec.params.sigma;
      ScoreVector d = local_row_diff(g_old, g_new, x, [sigma](const Graph& g, NodeId u,
                                                              const ScoreVector& v) {
        return dual_row(g, sigma, u, v);
      });
      for (auto& e : d) e *= scale;
      return d;
    }
    case OperatorKind::iterated: {
      // Telescoped difference R~^m - R^m = sum_k R~^k (R~-R) R^{m-1-k},
      // keeping exact zeros off the m-hop vicinity of the perturbation.
      ScoreVector diff(x.size(), 0.0);
      ScoreVector a = x;
      for (int j = 1; j <= spec.params.m; ++j) {
        ScoreVector next = j == 1 ? ScoreVector(x.size(), 0.0) : standard_apply(g_new, diff);
        const ScoreVector rd = local_row_diff(g_old, g_new, a, [](const Graph& g, NodeId u,
                                                                  const ScoreVector& v) {
          return standard_row(g, u, v);
        });
        for (std::size_t i = 0; i < next.size(); ++i) next[i] += rd[i];
        diff = std::move(next);
        if (j < spec.params.m) a = standard_apply(g_old, a);
      }
      for (auto& e : diff) e *= scale;
      return diff;
    }
    case OperatorKind::gamma:
    case OperatorKind::gamma_dual: {
      check_dense_payload(spec, g_old, "operator_delta_apply");
      OperatorSpec spec_new = spec;
      attach_dense_payload(spec_new, g_new);
      const ScoreVector a = gamma_kind_apply(spec_new, x);
      const ScoreVector b = gamma_kind_apply(spec, x);
      ScoreVector d(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) d[i] = scale * (a[i] - b[i]);
      return d;
    }
    case OperatorKind::recentered:
      throw std::invalid_argument(
          "operator_delta_apply: recentered kind has a global centering term and no local "
          "difference; it is supported for from-scratch dense solves only");
  }
  throw std::invalid_argument("operator_delta_apply: unknown kind");
}

ScoreVector transition_delta_apply(const Graph& g_old, const Graph& g_new,
                                   const ScoreVector& x) {
  // (P~^T - P^T) x = -(R~ - R) x for the standard action.
  ScoreVector d = local_row_diff(g_old, g_new, x, [](const Graph& g, NodeId u,
                                                     const ScoreVector& v) {
    return standard_row(g, u, v);
  });
  for (auto& e : d) e = -e;
  return d;
}

double estimate_spectral_radius(const OperatorSpec& spec, const Graph& g) {
  switch (spec.kind) {
    case OperatorKind::standard:
    case OperatorKind::iterated: {
      // Isolated nodes are fixed points of I - P^T and contribute 1.
      double base = core_radius(g);
      for (NodeId u = 0; u < g.num_nodes(); ++u) {
        if (g.degree(u) <= 0.0) {
          base = std::max(base, 1.0);
          break;
        }
      }
      return spec.kind == OperatorKind::iterated ? std::pow(base, spec.params.m) : base;
    }
    case OperatorKind::dual:
      return core_radius(g);
    case OperatorKind::gamma:
    case OperatorKind::gamma_dual:
    case OperatorKind::recentered:
      check_dense_payload(spec, g, "estimate_spectral_radius");
      return dense_kind_radius(spec);
  }
  throw std::invalid_argument("estimate_spectral_radius: unknown kind");
}

Eigen::MatrixXd dense_operator_matrix(const OperatorSpec& spec, const Graph& g) {
  const NodeId n = g.num_nodes();
  switch (spec.kind) {
    case OperatorKind::standard:
    case OperatorKind::iterated: {
      Eigen::MatrixXd mat = Eigen::MatrixXd::Identity(n, n);
      for (NodeId v = 0; v < n; ++v) {
        const double d = g.degree(v);
        if (d <= 0.0) continue;
        for (const auto& nb : g.neighbors(v)) mat(nb.id, v) -= nb.weight / d;
      }
      if (spec.kind == OperatorKind::iterated) {
        Eigen::MatrixXd acc = mat;
        for (int i = 1; i < spec.params.m; ++i) acc = mat * acc;
        return acc;
      }
      return mat;
    }
    case OperatorKind::dual: {
      Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(n, n);
      for (NodeId u = 0; u < n; ++u) {
        const double du = g.degree(u);
        if (du <= 0.0) continue;
        mat(u, u) += 1.0;
        const double lscale = deg_pow(du, -spec.params.sigma);
        for (const auto& nb : g.neighbors(u)) {
          mat(u, nb.id) -= lscale * nb.weight * deg_pow(g.degree(nb.id), spec.params.sigma - 1.0);
        }
      }
      return mat;
    }
    case OperatorKind::gamma:
    case OperatorKind::gamma_dual: {
      OperatorSpec bound = spec;
      if (!bound.dense || bound.dense->rows() != static_cast<Eigen::Index>(n)) {
        attach_dense_payload(bound, g);
      }
      const Eigen::MatrixXd& lg = *bound.dense;
      const std::vector<double>& dg = *bound.dense_diag;
      Eigen::VectorXd in_scale(n), out_scale(n);
      const double in_exp = spec.kind == OperatorKind::gamma ? -1.0 : spec.params.sigma - 1.0;
      for (NodeId i = 0; i < n; ++i) {
        in_scale[i] = diag_inv_pow(dg[i], in_exp);
        out_scale[i] =
            spec.kind == OperatorKind::gamma ? 1.0 : diag_inv_pow(dg[i], -spec.params.sigma);
      }
      return out_scale.asDiagonal() * lg * in_scale.asDiagonal();
    }
    case OperatorKind::recentered: {
      if (spec.dense && spec.dense->rows() == static_cast<Eigen::Index>(n)) {
        return *spec.dense;
      }
      return recentered_payload(g);
    }
  }
  throw std::invalid_argument("dense_operator_matrix: unknown kind");
}

}  // namespace chebypr

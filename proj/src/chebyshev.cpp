#include "chebypr/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chebypr {

ChebyCoefficients compute_coefficients(double mu, double lambda_max, int order) {
  if (order < 0) throw std::invalid_argument("compute_coefficients: order must be >= 0");
  if (!(mu > 0.0)) throw std::invalid_argument("compute_coefficients: mu must be positive");
  if (!(lambda_max > 0.0)) {
    throw std::invalid_argument("compute_coefficients: lambda_max must be positive");
  }
  ChebyCoefficients out;
  out.order = order;
  out.mu = mu;
  out.lambda_max = lambda_max;
  out.phi = lambda_max / 2.0;

  const int q = std::max(1024, 8 * order);
  std::vector<double> h(q);
  std::vector<double> theta(q);
  for (int i = 0; i < q; ++i) {
    theta[i] = std::numbers::pi * (i + 0.5) / q;
    const double x = out.phi * (std::cos(theta[i]) + 1.0);
    h[i] = mu / (x + mu);
  }
  out.c.resize(order + 1);
  for (int t = 0; t <= order; ++t) {
    double s = 0.0;
    for (int i = 0; i < q; ++i) s += std::cos(t * theta[i]) * h[i];
    out.c[t] = 2.0 * s / q;
  }
  return out;
}

std::uint64_t round_message_count(const Graph& g, std::span<const NodeId> active) {
  std::uint64_t s = 0;
  for (NodeId u : active) {
    if (u >= g.num_nodes()) throw std::invalid_argument("round_message_count: id out of range");
    s += g.degree_count(u);
  }
  return s;
}

ScoreVector cheby_apply(const Graph& g, const OperatorSpec& spec,
                        const ChebyCoefficients& coeffs, const ScoreVector& y,
                        MessageLedger& ledger) {
  if (y.size() != g.num_nodes()) throw std::invalid_argument("cheby_apply: dimension mismatch");
  if (coeffs.lambda_max != spec.lambda_max) {
    throw std::invalid_argument("cheby_apply: coefficients built for a different lambda_max");
  }
  if (spec.kind == OperatorKind::recentered) {
    throw std::invalid_argument(
        "cheby_apply: recentered kind is supported for dense from-scratch solves only");
  }

  const NodeId n = g.num_nodes();
  const double phi = coeffs.phi;

  ScoreVector acc(n);
  for (NodeId i = 0; i < n; ++i) acc[i] = 0.5 * coeffs.c[0] * y[i];
  if (coeffs.order == 0) return acc;

  auto log_round = [&](const ScoreVector& transmitted) {
    std::uint64_t msgs = 0;
    for (NodeId u = 0; u < n; ++u) {
      if (std::abs(transmitted[u]) > ledger.tau) msgs += g.degree_count(u);
    }
    ledger.add_round(msgs);
  };

  // Round 1 transmits y itself.
  log_round(y);
  ScoreVector prev2 = y;  // Tbar_0 y
  ScoreVector ry = operator_apply(spec, g, y);
  ScoreVector prev1(n);  // Tbar_1 y
  for (NodeId i = 0; i < n; ++i) prev1[i] = ry[i] / phi - y[i];
  for (NodeId i = 0; i < n; ++i) acc[i] += coeffs.c[1] * prev1[i];

  for (int t = 2; t <= coeffs.order; ++t) {
    log_round(prev1);
    ScoreVector rp = operator_apply(spec, g, prev1);
    ScoreVector cur(n);
    for (NodeId i = 0; i < n; ++i) {
      cur[i] = 2.0 * (rp[i] / phi - prev1[i]) - prev2[i];
    }
    for (NodeId i = 0; i < n; ++i) acc[i] += coeffs.c[t] * cur[i];
    prev2 = std::move(prev1);
    prev1 = std::move(cur);
  }
  return acc;
}

}  // namespace chebypr

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chebypr/graph.hpp"
#include "chebypr/operators.hpp"

namespace chebypr {

/// Truncated Chebyshev series of the diffusion kernel h(x) = mu/(x+mu)
/// over [0, lambda_max]: h(R) ~= (c_0/2) I + sum_{t=1..K} c_t Tbar_t(R).
struct ChebyCoefficients {
  int order = 0;  // K
  std::vector<double> c;
  double phi = 1.0;
  double mu = 1.0;
  double lambda_max = 2.0;
};

/// Series coefficients c_t = (2/pi) int_0^pi cos(t theta) h(phi(cos theta + 1)) dtheta,
/// evaluated by Chebyshev-node quadrature with Q = max(1024, 8K) nodes.
/// Deterministic; spectrally accurate for this smooth kernel.
ChebyCoefficients compute_coefficients(double mu, double lambda_max, int order);

/// Simulated per-round transmitted-message counters. In each synchronous
/// round, every node whose current value exceeds `tau` in absolute value
/// transmits to all its neighbors; the round's cost is the sum of those
/// nodes' incident-edge counts. tau = 0 counts strictly nonzero entries and
/// leaves results exact; larger values are a sensitivity knob for the
/// counts only.
struct MessageLedger {
  double tau = 0.0;
  std::vector<std::uint64_t> rounds;

  void add_round(std::uint64_t messages) { rounds.push_back(messages); }

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto r : rounds) s += r;
    return s;
  }
};

/// Messages one synchronous round costs when exactly `active` transmit:
/// the sum of their incident-edge counts (weights do not matter).
std::uint64_t round_message_count(const Graph& g, std::span<const NodeId> active);

/// f^(K) = (c_0/2) y + sum_{t=1..K} c_t Tbar_t(R) y via the three-term
/// recurrence Tbar_0 y = y, Tbar_1 y = ((R - phi I)/phi) y,
/// Tbar_t y = (2/phi)(R - phi I) Tbar_{t-1} y - Tbar_{t-2} y.
/// Each round t = 1..K logs the cost of transmitting Tbar_{t-1} y.
/// The recentered kind is rejected (its spectrum is not confined to
/// [0, lambda_max], which this series requires).
ScoreVector cheby_apply(const Graph& g, const OperatorSpec& spec,
                        const ChebyCoefficients& coeffs, const ScoreVector& y,
                        MessageLedger& ledger);

}  // namespace chebypr

#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <set>

#include "chebypr/errors.hpp"
#include "chebypr/solvers.hpp"
#include "test_support.hpp"

using namespace chebypr;

namespace {

Graph two_node() {
  const std::vector<WeightedEdge> edges{{0, 1, 1.0}};
  return build_graph(edges, 2);
}

Graph path3() {
  const std::vector<WeightedEdge> edges{{0, 1, 1.0}, {1, 2, 1.0}};
  return build_graph(edges, 3);
}

Graph triangle() {
  const std::vector<WeightedEdge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
  return build_graph(edges, 3);
}

Graph path_n(NodeId n) {
  std::vector<WeightedEdge> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1, 1.0});
  return build_graph(edges, n);
}

// Relative gap in the exact update identity, fully through dense solves.
double update_identity_gap(const Graph& g_old, const Graph& g_new, OperatorKind kind,
                  const OperatorParams& params, double mu, const ScoreVector& y) {
  const OperatorSpec spec = make_operator(kind, params, g_old);
  const OperatorSpec spec_new = rebind_operator(spec, g_new);
  const ScoreVector pr_old = dense_oracle(g_old, spec, mu, y);
  const ScoreVector pr_new = dense_oracle(g_new, spec_new, mu, y);
  const DiffusionParams dp = make_diffusion_params(mu, spec.lambda_max);
  const ScoreVector r = compute_residual(spec, g_old, g_new, dp, pr_old);
  const ScoreVector corr = dense_oracle(g_new, spec_new, mu, r);
  ScoreVector est(pr_old.size());
  for (std::size_t i = 0; i < est.size(); ++i) est[i] = pr_old[i] + corr[i] / dp.rho;
  return relative_error(est, pr_new);
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("dense_oracle golden fixtures") {
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, two_node());

  const ScoreVector two = dense_oracle(two_node(), spec, 1.0, {1.0, 0.0});
  CHECK(std::abs(two[0] - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(two[1] - 1.0 / 3.0) < 1e-12);

  const ScoreVector path = dense_oracle(path3(), spec, 1.0, {1.0, 0.0, 0.0});
  CHECK(std::abs(path[0] - 7.0 / 12.0) < 1e-12);
  CHECK(std::abs(path[1] - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(path[2] - 1.0 / 12.0) < 1e-12);
  CHECK(vec_sum(path) == doctest::Approx(1.0).epsilon(1e-14));

  const ScoreVector tri = dense_oracle(triangle(), spec, 1.0, {1.0, 0.0, 0.0});
  CHECK(std::abs(tri[0] - 3.0 / 5.0) < 1e-12);
  CHECK(std::abs(tri[1] - 1.0 / 5.0) < 1e-12);
  CHECK(std::abs(tri[2] - 1.0 / 5.0) < 1e-12);
}

TEST_CASE("dense_oracle satisfies the restart fixed point") {
  // pr = (1-alpha) y + alpha P^T pr with alpha = 1/(mu+1)
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = test::random_connected(60, 0.08, 4000 + seed, /*weighted=*/true);
    const OperatorSpec spec = make_operator(OperatorKind::standard, {}, g);
    const double mu = 0.5 + 0.4 * static_cast<double>(seed);
    const double alpha = alpha_from_mu(mu);
    const ScoreVector y = test::indicator(g.num_nodes(), static_cast<NodeId>(seed % 60));
    const ScoreVector pr = dense_oracle(g, spec, mu, y);
    const ScoreVector walked = transition_transpose_apply(g, pr);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      CHECK(pr[u] == doctest::Approx((1.0 - alpha) * y[u] + alpha * walked[u]).epsilon(1e-12));
    }
  }
}

TEST_CASE("dense_oracle conserves mass for the standard kind") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = test::random_connected(80, 0.05, 4100 + seed, /*weighted=*/true);
    const OperatorSpec spec = make_operator(OperatorKind::standard, {}, g);
    const ScoreVector y = test::random_vector(g.num_nodes(), 4200 + seed);
    const ScoreVector pr = dense_oracle(g, spec, 0.7, y);
    CHECK(vec_sum(pr) == doctest::Approx(vec_sum(y)).epsilon(1e-12));
  }
}

TEST_CASE("dense_oracle rejects oversized graphs") {
  const Graph g = test::random_gnp(30, 0.2, 5);
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, g);
  CHECK_THROWS_AS(dense_oracle(g, spec, 1.0, ScoreVector(30, 0.0), /*dense_limit=*/10),
                  std::invalid_argument);
}

TEST_CASE("dense_oracle reports a singular recentered system") {
  const Graph g = path_n(4);
  const OperatorSpec spec = make_operator(OperatorKind::recentered, {}, g);
  // place mu exactly on a flipped eigenvalue of -CWC
  const Eigen::MatrixXd r = dense_operator_matrix(spec, g);
  const Eigen::VectorXd ev =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(r).eigenvalues();
  const double mu = -ev[0];  // most negative eigenvalue
  REQUIRE(mu > 1e-9);
  CHECK_THROWS_AS(dense_oracle(g, spec, mu, {1.0, 0.0, 0.0, 0.0}), NumericalError);
}

TEST_CASE("solve_scratch converges to the oracle") {
  const Graph g = two_node();
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, g);
  MessageLedger ledger;
  const ScoreVector f = solve_scratch(g, spec, 1.0, {1.0, 0.0}, 40, ledger);
  CHECK(std::abs(f[0] - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(f[1] - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("solve_scratch order zero and zero input") {
  const Graph g = two_node();
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, g);
  MessageLedger ledger;
  const ChebyCoefficients coeffs = compute_coefficients(1.0, 2.0, 0);
  const ScoreVector f0 = solve_scratch(g, spec, 1.0, {1.0, 0.0}, 0, ledger);
  CHECK(f0[0] == doctest::Approx(0.5 * coeffs.c[0]));
  CHECK(f0[1] == 0.0);
  for (int k : {0, 5, 20}) {
    const ScoreVector z = solve_scratch(g, spec, 1.0, {0.0, 0.0}, k, ledger);
    CHECK(l2_norm(z) == 0.0);
  }
}

TEST_CASE("polynomial decay beats power iteration decay") {
  const Graph g = test::random_connected(100, 0.06, 4400, /*weighted=*/false);
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, g);
  const double mu = 1.0;
  const ScoreVector y = test::indicator(g.num_nodes(), 3);
  const ScoreVector oracle = dense_oracle(g, spec, mu, y);
  const DiffusionParams dp = make_diffusion_params(mu, spec.lambda_max);

  // regression slope of log10(err) over the clean decay regime
  auto fit_ratio = [](const std::vector<std::pair<int, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& pt : pts) {
      const double k = pt.first;
      const double le = std::log10(pt.second);
      sx += k;
      sy += le;
      sxx += k * k;
      sxy += k * le;
    }
    const double n = static_cast<double>(pts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return std::pow(10.0, slope);
  };

  std::vector<std::pair<int, double>> cheby_pts;
  for (int k = 5; k <= 30; ++k) {
    MessageLedger ledger;
    const double err = relative_error(solve_scratch(g, spec, mu, y, k, ledger), oracle);
    if (err > 1e-13) cheby_pts.emplace_back(k, err);
  }
  const double cheby_ratio = fit_ratio(cheby_pts);
  CHECK(cheby_ratio > 0.2);
  CHECK(cheby_ratio < 0.35);

  std::vector<std::pair<int, double>> power_pts;
  for (int t = 5; t <= 30; ++t) {
    MessageLedger ledger;
    const ScoreVector p =
        warm_restart_power(g, spec, dp, y, ScoreVector(g.num_nodes(), 0.0), t, ledger);
    const double err = relative_error(p, oracle);
    if (err > 1e-13) power_pts.emplace_back(t, err);
  }
  const double power_ratio = fit_ratio(power_pts);
  CHECK(power_ratio > 0.45);
  CHECK(power_ratio < 0.55);
}

TEST_CASE("compute_residual fixtures and locality") {
  const Graph path = path3();
  const Graph tri = triangle();
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, path);
  const DiffusionParams dp = make_diffusion_params(1.0, spec.lambda_max);

  SUBCASE("no perturbation, no residual") {
    const ScoreVector r = compute_residual(spec, path, path, dp, {0.5, 0.3, 0.2});
    CHECK(l2_norm(r) == 0.0);
  }

  SUBCASE("path-to-triangle seed") {
    const ScoreVector r =
        compute_residual(spec, path, tri, dp, {7.0 / 12.0, 1.0 / 3.0, 1.0 / 12.0});
    CHECK(r[0] == doctest::Approx(1.0 / 48.0).epsilon(1e-14));
    CHECK(r[1] == doctest::Approx(-8.0 / 48.0).epsilon(1e-14));
    CHECK(r[2] == doctest::Approx(7.0 / 48.0).epsilon(1e-14));
  }

  SUBCASE("residual mass cancels for the standard kind") {
    // Isolation flips the operator's diagonal convention, so keep every
    // node connected on both sides of the delta here.
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const Graph g = test::random_connected(60, 0.08, 4500 + seed, /*weighted=*/true);
      const GraphDelta delta = test::random_delta(g, 5, 4600 + seed, /*allow_isolation=*/false);
      const Graph g2 = apply_delta(g, delta);
      const ScoreVector pr = test::random_vector(g.num_nodes(), 4700 + seed);
      const ScoreVector r = compute_residual(spec, g, g2, dp, pr);
      CHECK(std::abs(vec_sum(r)) < 1e-14);
    }
  }

  SUBCASE("residual support stays in the one-hop vicinity") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Graph g = test::random_gnp(80, 0.05, 4800 + seed, /*weighted=*/true);
      const GraphDelta delta = test::random_delta(g, 4, 4900 + seed);
      const Graph g2 = apply_delta(g, delta);
      const ScoreVector pr = test::random_vector(g.num_nodes(), 5000 + seed);
      const ScoreVector r = compute_residual(spec, g, g2, dp, pr);

      std::set<NodeId> allowed;
      for (NodeId u : delta.touched()) {
        allowed.insert(u);
        for (const auto& nb : g.neighbors(u)) allowed.insert(nb.id);
        for (const auto& nb : g2.neighbors(u)) allowed.insert(nb.id);
      }
      for (NodeId u : support_of(r)) CHECK(allowed.count(u) == 1);
    }
  }
}

TEST_CASE("exact update identity through dense solves") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> mud(0.2, 4.0);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Graph g = test::random_gnp(60, 0.08, 5100 + seed, /*weighted=*/true);
    const GraphDelta delta = test::random_delta(g, 1 + seed % 10, 5200 + seed);
    const Graph g2 = apply_delta(g, delta);
    const ScoreVector y = test::indicator(g.num_nodes(), static_cast<NodeId>(seed % 60));
    const double mu = mud(rng);
    CHECK(update_identity_gap(g, g2, OperatorKind::standard, {}, mu, y) < 1e-10);
    CHECK(update_identity_gap(g, g2, OperatorKind::dual, {.sigma = 0.6}, mu, y) < 1e-10);
  }
}

TEST_CASE("update_local with no perturbation returns pr_old at zero cost") {
  const Graph g = path3();
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, g);
  const ScoreVector pr_old{7.0 / 12.0, 1.0 / 3.0, 1.0 / 12.0};
  MessageLedger ledger;
  const UpdateResult res = update_local(g, g, spec, 1.0, pr_old, 12, ledger);
  CHECK(res.scores == pr_old);  // bit-exact: the residual is exactly zero
  CHECK(res.residual_support_size == 0);
  CHECK(ledger.total() == 0);
}

TEST_CASE("update_local path-to-triangle fixture") {
  const Graph path = path3();
  const Graph tri = triangle();
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, path);
  const ScoreVector pr_old{7.0 / 12.0, 1.0 / 3.0, 1.0 / 12.0};

  // the diffused correction solves the residual seed on the new graph
  const DiffusionParams dp = make_diffusion_params(1.0, spec.lambda_max);
  const ScoreVector r = compute_residual(spec, path, tri, dp, pr_old);
  const ScoreVector corr = dense_oracle(tri, spec, 1.0, r);
  CHECK(corr[0] == doctest::Approx(1.0 / 120.0).epsilon(1e-12));
  CHECK(corr[1] == doctest::Approx(-8.0 / 120.0).epsilon(1e-12));
  CHECK(corr[2] == doctest::Approx(7.0 / 120.0).epsilon(1e-12));

  MessageLedger ledger;
  const UpdateResult res = update_local(path, tri, spec, 1.0, pr_old, 40, ledger);
  CHECK(std::abs(res.scores[0] - 3.0 / 5.0) < 1e-10);
  CHECK(std::abs(res.scores[1] - 1.0 / 5.0) < 1e-10);
  CHECK(std::abs(res.scores[2] - 1.0 / 5.0) < 1e-10);
  CHECK(res.residual_support_size == 3);
  CHECK(ledger.total() > 0);
}

TEST_CASE("update_local and solve_scratch meet at the oracle") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Graph g = test::random_connected(150, 0.03, 5300 + seed, /*weighted=*/true);
    const GraphDelta delta = test::random_delta(g, 5, 5400 + seed);
    const Graph g2 = apply_delta(g, delta);
    const OperatorSpec spec = make_operator(OperatorKind::standard, {}, g);
    const ScoreVector y = test::indicator(g.num_nodes(), static_cast<NodeId>(7 * seed + 1));
    const ScoreVector pr_old = dense_oracle(g, spec, 1.0, y);
    const ScoreVector oracle = dense_oracle(g2, spec, 1.0, y);

    MessageLedger l1, l2;
    const ScoreVector upd = update_local(g, g2, spec, 1.0, pr_old, 60, l1).scores;
    const ScoreVector scr = solve_scratch(g2, spec, 1.0, y, 60, l2);
    CHECK(relative_error(upd, oracle) < 1e-8);
    CHECK(relative_error(scr, oracle) < 1e-8);
  }
}

TEST_CASE("a far-away perturbation updates much cheaper than scratch") {
  const Graph path = path_n(200);
  GraphDelta d;
  d.changes = {{195, 196, 0.5}};
  const Graph bumped = apply_delta(path, d);
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, path);
  const ScoreVector y = test::indicator(200, 0);
  const ScoreVector pr_old = dense_oracle(path, spec, 1.0, y);
  const ScoreVector oracle = dense_oracle(bumped, spec, 1.0, y);

  const double target = 1e-6;
  std::uint64_t update_msgs = 0, scratch_msgs = 0;
  for (int k = 0; k <= 64; ++k) {
    MessageLedger ledger;
    if (relative_error(update_local(path, bumped, spec, 1.0, pr_old, k, ledger).scores,
                       oracle) <= target) {
      update_msgs = ledger.total();
      break;
    }
  }
  for (int k = 0; k <= 64; ++k) {
    MessageLedger ledger;
    if (relative_error(solve_scratch(bumped, spec, 1.0, y, k, ledger), oracle) <= target) {
      scratch_msgs = ledger.total();
      break;
    }
  }
  CHECK(scratch_msgs > 0);
  CHECK(static_cast<double>(update_msgs) < 0.25 * static_cast<double>(scratch_msgs));
}

TEST_CASE("warm_restart_power") {
  const Graph tri = triangle();
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, tri);
  const DiffusionParams dp = make_diffusion_params(1.0, spec.lambda_max);
  const ScoreVector y{1.0, 0.0, 0.0};
  MessageLedger ledger;

  SUBCASE("zero steps returns the start vector") {
    const ScoreVector p0{0.1, 0.2, 0.3};
    CHECK(warm_restart_power(tri, spec, dp, y, p0, 0, ledger) == p0);
  }

  SUBCASE("the oracle is a fixed point") {
    const ScoreVector pr = dense_oracle(tri, spec, 1.0, y);
    const ScoreVector p = warm_restart_power(tri, spec, dp, y, pr, 1, ledger);
    CHECK(l2_distance(p, pr) < 1e-12);
  }

  SUBCASE("one warm step equals pr_old plus the residual seed") {
    const Graph path = path3();
    const ScoreVector pr_old = dense_oracle(path, spec, 1.0, y);
    const ScoreVector r = compute_residual(spec, path, tri, dp, pr_old);
    const ScoreVector p = warm_restart_power(tri, spec, dp, y, pr_old, 1, ledger);
    for (NodeId u = 0; u < 3; ++u) {
      CHECK(p[u] == doctest::Approx(pr_old[u] + r[u]).epsilon(1e-14));
    }
  }
}

TEST_CASE("the normalized recursion is the restart power iteration") {
  // For the standard kind with the exact bound, one step of
  // p <- rho y + psi S p is exactly p <- (1-alpha) y + alpha P^T p.
  const Graph g = test::random_connected(40, 0.1, 5500, /*weighted=*/true);
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, g);
  const double alpha = 0.35;
  const double mu = mu_from_alpha(alpha);
  const DiffusionParams dp = make_diffusion_params(mu, spec.lambda_max);
  const ScoreVector y = test::indicator(g.num_nodes(), 2);

  ScoreVector byhand = y;
  ScoreVector byrec = y;
  MessageLedger ledger;
  for (int t = 0; t < 20; ++t) {
    const ScoreVector walked = transition_transpose_apply(g, byhand);
    for (std::size_t i = 0; i < byhand.size(); ++i) {
      byhand[i] = (1.0 - alpha) * y[i] + alpha * walked[i];
    }
    byrec = warm_restart_power(g, spec, dp, y, byrec, 1, ledger);
    for (std::size_t i = 0; i < byhand.size(); ++i) {
      CHECK(byrec[i] == doctest::Approx(byhand[i]).epsilon(1e-15));
    }
  }
}

TEST_CASE("rwr_update") {
  const Graph path = path3();
  const Graph tri = triangle();
  const ScoreVector y{1.0, 0.0, 0.0};
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, path);
  const ScoreVector pr_old = dense_oracle(path, spec, 1.0, y);

  SUBCASE("identity perturbation returns pr_old") {
    MessageLedger ledger;
    const ScoreVector p = rwr_update(path, path, 0.5, pr_old, {.error_target = 1e-10}, ledger);
    CHECK(l2_distance(p, pr_old) < 1e-12);
  }

  SUBCASE("converges to the evolved solution") {
    MessageLedger ledger;
    const ScoreVector p = rwr_update(path, tri, 0.5, pr_old, {.error_target = 1e-9}, ledger);
    const ScoreVector oracle = dense_oracle(tri, spec, 1.0, y);
    CHECK(relative_error(p, oracle) < 1e-9);
    CHECK(ledger.total() > 0);
  }

  SUBCASE("agrees with the local update at matching targets") {
    MessageLedger l1, l2;
    const ScoreVector a = rwr_update(path, tri, 0.5, pr_old, {.error_target = 1e-10}, l1);
    const ScoreVector b = update_local(path, tri, spec, 1.0, pr_old, 40, l2).scores;
    CHECK(l2_distance(a, b) < 2e-10);
  }

  SUBCASE("validates alpha and the stopping rule") {
    MessageLedger ledger;
    CHECK_THROWS_AS(rwr_update(path, tri, 1.2, pr_old, {.steps = 3}, ledger),
                    std::invalid_argument);
    CHECK_THROWS_AS(rwr_update(path, tri, 0.5, pr_old, {}, ledger), std::invalid_argument);
    RwrStop both;
    both.error_target = 1e-6;
    both.steps = 3;
    CHECK_THROWS_AS(rwr_update(path, tri, 0.5, pr_old, both, ledger), std::invalid_argument);
  }
}

TEST_CASE("push_update") {
  const Graph path = path3();
  const Graph tri = triangle();
  const ScoreVector y{1.0, 0.0, 0.0};
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, path);
  const ScoreVector pr_old = dense_oracle(path, spec, 1.0, y);

  SUBCASE("zero residual means zero pushes") {
    MessageLedger ledger;
    const ScoreVector p = push_update(path, path, 0.5, pr_old, 1e-12, ledger);
    CHECK(p == pr_old);
    CHECK(ledger.total() == 0);
    CHECK(ledger.rounds.empty());
  }

  SUBCASE("drains the residual to the evolved solution") {
    MessageLedger ledger;
    const double eps = 1e-12;
    const ScoreVector p = push_update(path, tri, 0.5, pr_old, eps, ledger);
    const ScoreVector oracle = dense_oracle(tri, spec, 1.0, y);
    double linf = 0.0;
    for (NodeId u = 0; u < 3; ++u) linf = std::max(linf, std::abs(p[u] - oracle[u]));
    CHECK(linf <= eps * 3);
    CHECK(ledger.total() > 0);
  }

  SUBCASE("the approximation/residual invariant holds along the run") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Graph g = test::random_connected(40, 0.08, 5600 + seed, /*weighted=*/true);
      const GraphDelta delta = test::random_delta(g, 4, 5700 + seed);
      const Graph g2 = apply_delta(g, delta);
      const OperatorSpec sp = make_operator(OperatorKind::standard, {}, g);
      const ScoreVector seed_vec = test::indicator(g.num_nodes(), 1);
      const ScoreVector old = dense_oracle(g, sp, 1.0, seed_vec);
      const ScoreVector oracle = dense_oracle(g2, sp, 1.0, seed_vec);
      const double alpha = 0.5;

      MessageLedger ledger;
      std::uint64_t checked = 0;
      const auto observer = [&](const PushState& state, std::uint64_t pushes) {
        if (pushes % 10 != 0) return;
        ++checked;
        const ScoreVector rest = dense_oracle(g2, sp, 1.0, state.residual);
        ScoreVector recon(state.approximation.size());
        for (std::size_t i = 0; i < recon.size(); ++i) {
          recon[i] = state.approximation[i] + rest[i] / (1.0 - alpha);
        }
        CHECK(l2_distance(recon, oracle) < 1e-10);
      };
      (void)push_update(g, g2, alpha, old, 1e-9, ledger, kDefaultMaxPushes, observer);
      CHECK(checked > 0);
    }
  }

  SUBCASE("push budget guard trips") {
    MessageLedger ledger;
    CHECK_THROWS_AS(push_update(path, tri, 0.5, pr_old, 1e-13, ledger, /*max_pushes=*/3),
                    NumericalError);
  }

  SUBCASE("runs are deterministic") {
    MessageLedger l1, l2;
    const ScoreVector a = push_update(path, tri, 0.5, pr_old, 1e-10, l1);
    const ScoreVector b = push_update(path, tri, 0.5, pr_old, 1e-10, l2);
    CHECK(a == b);
    CHECK(l1.rounds == l2.rounds);
  }
}

TEST_CASE("update_local flags a broken spectral bound") {
  // Evolve a graph so the dual operator's radius outgrows the stored
  // estimate: a heavy star around one node reshapes the degree profile.
  const Graph g = test::random_connected(40, 0.05, 5800, /*weighted=*/false);
  const OperatorSpec spec = make_operator(OperatorKind::dual, {.sigma = 0.8}, g);
  GraphDelta d;
  for (NodeId v = 10; v < 20; ++v) {
    if (!g.has_edge(0, v)) d.changes.push_back({0, v, 50.0});
  }
  const Graph g2 = apply_delta(g, d);
  const ScoreVector pr_old(g.num_nodes(), 1.0 / 40.0);
  MessageLedger ledger;
  const bool violated = estimate_spectral_radius(spec, g2) > spec.lambda_max;
  if (violated) {
    CHECK_THROWS_AS(update_local(g, g2, spec, 1.0, pr_old, 10, ledger), LambdaBoundViolation);
  } else {
    (void)update_local(g, g2, spec, 1.0, pr_old, 10, ledger);  // must not throw
  }
}

}  // TEST_SUITE

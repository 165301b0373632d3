#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chebypr/experiments.hpp"
#include "chebypr/solvers.hpp"

using namespace chebypr;

namespace {

ExperimentConfig tiny_synthetic(const char* recipe) {
  ExperimentConfig c;
  c.recipe = parse_synthetic_recipe(recipe);
  c.graph_seed = 3;
  c.rng_seed = 5;
  c.seeds = 3;
  return c;
}

std::string to_csv_string(const CsvTable& t) {
  std::ostringstream os;
  t.write(os);
  return os.str();
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("config validation") {
  ExperimentConfig c = tiny_synthetic("ba,50,2");
  CHECK_THROWS_AS(run_solve(c), std::invalid_argument);  // neither order nor target
  c.order = 8;
  c.target = 1e-8;
  CHECK_THROWS_AS(run_solve(c), std::invalid_argument);  // both modes
  c.target.reset();
  c.alpha = 0.5;
  c.mu = 1.0;
  CHECK_THROWS_AS(run_solve(c), std::invalid_argument);  // alpha and mu
  c.mu.reset();
  c.alpha = 1.5;
  CHECK_THROWS_AS(run_solve(c), std::invalid_argument);  // alpha out of range

  ExperimentConfig empty;
  empty.order = 4;
  CHECK_THROWS_AS(run_solve(empty), std::invalid_argument);  // no graph source

  ExperimentConfig low_target = tiny_synthetic("ba,50,2");
  low_target.target = 1e-15;  // below the double-precision floor
  CHECK_THROWS_AS(run_exp2(low_target), std::invalid_argument);
}

TEST_CASE("run_solve reproduces the one-edge fixture") {
  ExperimentConfig c = tiny_synthetic("ba,2,1");  // the single-edge graph
  c.order = 40;
  const SolveOutcome out = run_solve(c);
  CHECK(out.rel_error < 1e-12);
  ScoreVector sorted = out.scores;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(sorted[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("run_solve at order zero reports the constant-term error") {
  ExperimentConfig c = tiny_synthetic("ba,60,2");
  c.order = 0;
  const SolveOutcome out = run_solve(c);
  // definition: error of (c_0/2) y against the reference
  const Graph g = make_synthetic_graph(*c.recipe, c.graph_seed);
  const OperatorSpec spec = make_operator(OperatorKind::standard, {}, g);
  const ChebyCoefficients coeffs = compute_coefficients(1.0, 2.0, 0);
  ScoreVector y(g.num_nodes(), 0.0);
  std::size_t at = 0;
  for (std::size_t i = 0; i < out.scores.size(); ++i) {
    if (out.scores[i] != 0.0) at = i;
  }
  y[at] = 1.0;
  const ScoreVector ref = dense_oracle(g, spec, 1.0, y);
  ScoreVector f0(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) f0[i] = 0.5 * coeffs.c[0] * y[i];
  CHECK(out.rel_error == doctest::Approx(relative_error(f0, ref)).epsilon(1e-12));
}

TEST_CASE("run_solve target mode finds a sufficient order") {
  ExperimentConfig c = tiny_synthetic("ba,80,2");
  c.target = 1e-8;
  const SolveOutcome out = run_solve(c);
  CHECK(out.rel_error <= 1e-8);
  CHECK(out.order > 0);
  CHECK(out.messages > 0);

  // one order less must miss the target (minimality)
  ExperimentConfig probe = c;
  probe.target.reset();
  probe.order = out.order - 1;
  CHECK(run_solve(probe).rel_error > 1e-8);
}

TEST_CASE("run_update tracks a perturbation") {
  ExperimentConfig c = tiny_synthetic("ba,80,2");
  c.order = 30;
  c.pert_edges = 2;
  const SolveOutcome out = run_update(c);
  CHECK(out.rel_error < 1e-9);
  CHECK(out.messages > 0);
}

TEST_CASE("run_exp1 emits both curves over the grid") {
  ExperimentConfig c = tiny_synthetic("ba,120,2");
  c.order = 16;
  const std::vector<Exp1Row> rows = run_exp1(c);
  REQUIRE_FALSE(rows.empty());
  const auto updates = std::count_if(rows.begin(), rows.end(),
                                     [](const Exp1Row& r) { return r.method == "update"; });
  const auto scratches = std::count_if(rows.begin(), rows.end(),
                                       [](const Exp1Row& r) { return r.method == "scratch"; });
  CHECK(updates == scratches);
  CHECK(updates >= 5);

  // scratch error decreases along the grid until the floor
  std::vector<double> scratch_err;
  for (const auto& r : rows) {
    if (r.method == "scratch") scratch_err.push_back(r.mean_rel_error);
  }
  for (std::size_t i = 1; i < scratch_err.size(); ++i) {
    if (scratch_err[i] > 1e-13) CHECK(scratch_err[i] < scratch_err[i - 1]);
  }

  // curve dominance: every scratch point is matched or beaten by some
  // update point using no more messages
  for (const auto& s : rows) {
    if (s.method != "scratch") continue;
    bool dominated = false;
    for (const auto& r : rows) {
      if (r.method == "update" && r.messages_mean <= s.messages_mean &&
          r.mean_rel_error <= s.mean_rel_error) {
        dominated = true;
        break;
      }
    }
    CHECK(dominated);
  }
}

TEST_CASE("run_exp1 with a zero perturbation puts the update at the floor") {
  ExperimentConfig c = tiny_synthetic("ba,100,2");
  c.order = 4;
  c.seeds = 2;
  c.pert_edges = 0;
  const std::vector<Exp1Row> rows = run_exp1(c);
  for (const auto& r : rows) {
    if (r.method == "update" && r.order == 0) {
      CHECK(r.mean_rel_error < 1e-14);
      CHECK(r.messages_mean == 0.0);
    }
  }
}

TEST_CASE("run_exp2 sweeps perturbation sizes") {
  ExperimentConfig c = tiny_synthetic("ba,150,2");
  c.target = 1e-8;
  c.perturbation_sizes = {1, 2, 4};
  const Exp2Outcome out = run_exp2(c);
  REQUIRE(out.rows.size() == 3);
  for (const auto& r : out.rows) {
    CHECK(r.messages_update > 0);
    CHECK(r.messages_scratch > 0);
  }
  CHECK(out.rows[0].perturbation_edges == 1);
  CHECK(out.rows[2].perturbation_edges == 4);
}

TEST_CASE("run_exp3 covers all three methods") {
  ExperimentConfig c = tiny_synthetic("ba,150,2");
  c.targets = {1e-2, 1e-6};
  const std::vector<Exp3Row> rows = run_exp3(c);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    if (!r.guard_tripped) {
      CHECK(r.achieved_error <= r.error_target);
    }
  }
  // the proposed method's cost grows as the target tightens
  CHECK(rows[3].messages >= rows[0].messages);

  ExperimentConfig wrong_kind = c;
  wrong_kind.op_kind = OperatorKind::dual;
  CHECK_THROWS_AS(run_exp3(wrong_kind), std::invalid_argument);
}

TEST_CASE("run_exp4 tracks additions and deletions") {
  ExperimentConfig c = tiny_synthetic("ba,100,2");
  c.order = 15;
  c.horizon = 10;
  c.snapshot_edges = 2;

  const std::vector<Exp4Row> fwd = run_exp4(c);
  REQUIRE(fwd.size() == 11);
  CHECK(fwd[0].snapshot == 0);
  CHECK(fwd[0].rel_error_tracked == 0.0);
  for (const auto& r : fwd) {
    CHECK(std::isfinite(r.rel_error_tracked));
    CHECK(std::isfinite(r.rel_error_scratch));
    CHECK_FALSE(r.fell_back_to_scratch);
  }
  for (std::size_t k = 1; k < fwd.size(); ++k) CHECK(fwd[k].perturbation_size > 0);

  ExperimentConfig rev = c;
  rev.reverse = true;
  const std::vector<Exp4Row> bwd = run_exp4(rev);
  REQUIRE(bwd.size() == 11);
  CHECK(bwd[0].rel_error_tracked == 0.0);
  for (const auto& r : bwd) CHECK(std::isfinite(r.rel_error_tracked));
}

TEST_CASE("emitted CSV is bit-reproducible") {
  ExperimentConfig c = tiny_synthetic("ba,100,2");
  c.order = 8;
  c.seeds = 2;
  const std::string a = to_csv_string(exp1_csv(run_exp1(c)));
  const std::string b = to_csv_string(exp1_csv(run_exp1(c)));
  CHECK(a == b);
  CHECK(a.find("method,operator,order,messages_mean,mean_rel_error,stderr") == 0);

  ExperimentConfig e4 = tiny_synthetic("ba,100,2");
  e4.order = 10;
  e4.horizon = 5;
  e4.snapshot_edges = 2;
  CHECK(to_csv_string(exp4_csv(run_exp4(e4))) == to_csv_string(exp4_csv(run_exp4(e4))));
}

TEST_CASE("format_double uses locale-independent shortest form") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1e-13) == "1e-13");
  const double v = 1.0 / 3.0;
  CHECK(std::stod(format_double(v)) == v);  // round trip
}

TEST_CASE("score vectors serialize one node per line") {
  const auto path = std::filesystem::temp_directory_path() / "chebypr_scores.vec";
  write_score_vector({0.5, 0.25}, path.string());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "0 0.5");
  std::getline(in, line);
  CHECK(line == "1 0.25");
  std::filesystem::remove(path);
}

TEST_CASE("child seeds differ across indices and roots") {
  CHECK(child_seed(1, 0) != child_seed(1, 1));
  CHECK(child_seed(1, 0) != child_seed(2, 0));
  CHECK(child_seed(7, 3) == child_seed(7, 3));
}

}  // TEST_SUITE

#include <doctest.h>

#include <climits>
#include <cmath>
#include <cstring>

#include "lmsr/errors.hpp"
#include "lmsr/form.hpp"
#include "lmsr/noise.hpp"
#include "lmsr/registry.hpp"
#include "lmsr/scheduler.hpp"

using namespace lmsr;

namespace {

Dataset noise_data(std::uint64_t seed, int n, int points = 8) {
  SplitMix64 rng(seed);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<double> rows;
  std::vector<double> y;
  for (int p = 0; p < points; ++p) {
    for (int i = 0; i < n; ++i) rows.push_back(rng.uniform(0.5, 2.5));
    y.push_back(rng.uniform(-3, 3));
  }
  return Dataset(names, rows, y);
}

SolverConfig depth_one_all_trees() {
  SolverConfig cfg;
  cfg.max_depth = 1;
  cfg.ops = OperatorSet::standard();
  cfg.rules = RuleFlags::none();
  cfg.tol = 1e-300;
  cfg.time_source = TimeSource::work;
  return cfg;
}

// Replays the event log: once a tree of depth d has solved, nothing deeper
// may be reported as solved.
void check_replay(const PhaseReport& phase) {
  int solved_depth = INT_MAX;
  for (const auto& e : phase.events) {
    if (e.solved) {
      CHECK(e.depth <= solved_depth);
      solved_depth = std::min(solved_depth, e.depth);
    }
  }
  for (const auto& t : phase.trees) {
    if (t.status == TreeStatus::solved) CHECK(t.depth <= solved_depth);
  }
  if (phase.solved) {
    REQUIRE(phase.answer.has_value());
    CHECK(phase.answer->tree.depth() == solved_depth);
  }
}

}  // namespace

TEST_SUITE("scheduler") {
  TEST_CASE("round-robin slices wrap around the catalog") {
    const Dataset d = noise_data(1, 1);
    SolverConfig cfg = depth_one_all_trees();
    const auto report = search(d, cfg, 2, 1e-5);
    REQUIRE(report.phases.size() == 1);
    const auto& phase = report.phases[0];
    REQUIRE(phase.trees.size() == 5);
    REQUIRE(phase.slices.size() >= 3);
    CHECK(phase.slices[0].trees == std::vector<std::size_t>{0, 1});
    CHECK(phase.slices[1].trees == std::vector<std::size_t>{2, 3});
    CHECK(phase.slices[2].trees == std::vector<std::size_t>{4, 0});
    for (std::size_t s = 1; s < phase.slices.size(); ++s) CHECK(phase.slices[s].start_s >= phase.slices[s - 1].end_s);
    for (const auto& t : phase.trees) CHECK(t.status == TreeStatus::exhausted);
    CHECK_FALSE(report.solved);
    // Unsolved: the answer is the lowest SSE seen anywhere.
    REQUIRE(report.answer.has_value());
    for (const auto& t : phase.trees) {
      if (t.best) CHECK(report.answer->sse <= t.best->sse);
    }
  }

  TEST_CASE("a shallow solution cancels deeper trees") {
    std::vector<double> rows;
    std::vector<double> y;
    for (int i = 1; i <= 8; ++i) {
      rows.push_back(0.5 * i);
      y.push_back(3.0 * 0.5 * i);
    }
    const Dataset d({"x"}, rows, y);
    SolverConfig cfg;
    cfg.max_depth = 2;
    cfg.time_source = TimeSource::work;
    const auto report = search(d, cfg, 1, 1e-4);
    REQUIRE(report.solved);
    CHECK(report.answer->tree.depth() == 0);
    CHECK(report.answer->params.leaves[0].constant == doctest::Approx(3.0));
    const auto& phase = report.phases[0];
    CHECK(phase.trees[0].status == TreeStatus::solved);
    for (std::size_t i = 1; i < phase.trees.size(); ++i) {
      CHECK(phase.trees[i].status != TreeStatus::solved);
      CHECK(phase.trees[i].status != TreeStatus::paused);
      CHECK(phase.trees[i].status != TreeStatus::pending);
    }
    check_replay(phase);
  }

  TEST_CASE("the phase time limit stops the search") {
    const Dataset d = noise_data(2, 2);
    SolverConfig cfg = depth_one_all_trees();
    cfg.max_depth = 2;
    cfg.time_limit_s = 2e-3;
    const auto report = search(d, cfg, 1, 5e-4);
    const auto& phase = report.phases[0];
    CHECK(phase.elapsed_s >= 2e-3);
    bool any_timeout = false;
    for (const auto& t : phase.trees) any_timeout = any_timeout || t.status == TreeStatus::timeout;
    CHECK(any_timeout);
  }

  TEST_CASE("single-thread work-mode runs are bit-reproducible") {
    const Dataset d = noise_data(3, 2);
    SolverConfig cfg = depth_one_all_trees();
    cfg.max_depth = 2;
    cfg.rules = RuleFlags::all();
    cfg.time_limit_s = 0.05;
    const auto a = search(d, cfg, 1, 2e-4);
    const auto b = search(d, cfg, 1, 2e-4);
    CHECK(a == b);
    REQUIRE(a.answer.has_value());
    CHECK(std::memcmp(&a.answer->sse, &b.answer->sse, sizeof(double)) == 0);
  }

  TEST_CASE("multi-threaded searches never report a deeper solution") {
    const ProblemSpec& p = find_problem("II.37.1");
    const Dataset d = p.generate(10, 5);
    SolverConfig cfg;
    cfg.max_depth = 2;
    cfg.time_limit_s = 120;
    const auto report = search(d, cfg, 4, 0.05);
    REQUIRE(report.solved);
    check_replay(report.phases[0]);
  }

  TEST_CASE("pick_primary prefers shallow trees, then sse, then simplicity") {
    auto model = [](const char* tree, double sse, int power) {
      const Gentree t = Gentree::parse(tree);
      ParamAssignment p;
      for (int j = 0; j < t.leaf_count(); ++j) p.leaves.push_back({{power}, false, 1.0});
      return CandidateModel{t, p, sse, 1};
    };
    CHECK(pick_primary({}) == std::nullopt);
    const auto a = pick_primary({{3, model("(+ L L)", 1e-9, 1)}, {1, model("L", 1e-5, 1)}});
    CHECK(a->tree.depth() == 0);
    const auto b = pick_primary({{3, model("L", 1e-9, 2)}, {1, model("L", 1e-9 + 1e-25, 1)}}, 1e-20);
    CHECK(b->params.leaves[0].powers[0] == 1);
    const auto c = pick_primary({{3, model("L", 1e-9, 2)}, {1, model("L", 2e-9, 1)}}, 1e-20);
    CHECK(c->params.leaves[0].powers[0] == 2);
    const auto e = pick_primary({{7, model("L", 1e-9, 1)}, {2, model("L", 1e-9, 1)}});
    CHECK(e.has_value());
    const Dataset d({"x"}, {1, 2}, {3, 4});
    CHECK(sse_tie_width(d) == doctest::Approx(25e-20));
  }
}

TEST_SUITE("scheduler.restarts") {
  TEST_CASE("plan parsing") {
    const auto plan = parse_restart_plan("add,mul,div,sqrt:1e-4:600;add,mul,div,exp:1e-8:100:2");
    REQUIRE(plan.size() == 2);
    CHECK(plan[0].ops == OperatorSet::standard());
    CHECK(plan[0].tol == 1e-4);
    CHECK(plan[0].budget_s == 600);
    CHECK_FALSE(plan[0].max_constants.has_value());
    CHECK(plan[1].ops == OperatorSet::with_exp());
    CHECK(plan[1].max_constants == 2);
    const auto def = default_restart_plan();
    REQUIRE(def.size() == 2);
    CHECK(def[0].ops == OperatorSet::standard());
    CHECK(def[1].ops == OperatorSet::with_exp());
    CHECK(def[1].tol == 1e-8);
    CHECK_THROWS_AS(parse_restart_plan(""), ConfigError);
    CHECK_THROWS_AS(parse_restart_plan("add:1e-4"), ConfigError);
    CHECK_THROWS_AS(parse_restart_plan("add:x:1"), ConfigError);
  }

  TEST_CASE("an empty plan is a configuration error") {
    const Dataset d = noise_data(1, 1);
    CHECK_THROWS_AS(search_with_restarts(d, SolverConfig{}, {}), ConfigError);
  }

  TEST_CASE("a solved first phase skips the rest") {
    const Dataset d({"x"}, {1, 2, 3}, {2, 4, 6});
    SolverConfig cfg;
    const auto report = search_with_restarts(d, cfg, default_restart_plan());
    CHECK(report.phases.size() == 1);
    CHECK(report.solved);
  }

  TEST_CASE("the exponential restart finds a Gaussian density") {
    const ProblemSpec& p = find_problem("I.6.20a");
    const Dataset d = p.generate(10, 1);
    SolverConfig cfg;
    cfg.max_depth = 2;
    // Phase one cannot represent the law and must not accept a loose fit.
    const std::vector<RestartPhase> plan{{OperatorSet::standard(), 1e-12, 5, std::nullopt},
                                         {OperatorSet::with_exp(), 1e-8, 300, 2}};
    const auto report = search_with_restarts(d, cfg, plan);
    REQUIRE(report.phases.size() == 2);
    CHECK_FALSE(report.phases[0].solved);
    REQUIRE(report.solved);
    CHECK(report.answer->tree.depth() == 2);
    CHECK(same_functional_form(*report.answer, *p.expected_model(), p.generate(50, 99)));
    CHECK(report.answer->sse <= 1e-8);
  }
}

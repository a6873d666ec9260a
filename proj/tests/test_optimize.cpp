#include <doctest.h>

#include "greenopt/io.hpp"
#include "greenopt/optimize.hpp"
#include "support.hpp"

using namespace greenopt;

TEST_CASE("iteration zero is the vacuum identity") {
  RunConfig cfg = test::small_config();
  cfg.max_iterations = 0;
  const AdditiveResult r = run_additive(cfg);
  CHECK(r.state.iteration == 0);
  CHECK(r.state.history.empty());
  CHECK(r.state.purcell() == 1.0);
  CHECK(r.reason == StopReason::max_iterations);
}

TEST_CASE("additive steps respect the mask and record every block") {
  RunConfig cfg = test::small_config();
  cfg.block_size = 2;
  OptimizationState s = initial_state(cfg);
  const Grid2D& g = cfg.grid;
  const CellBox interior = interior_box(g, cfg.solver);
  std::vector<CellIndex> written;
  for (int k = 0; k < 4; ++k) {
    const DeltaFMap map = current_delta_map(s, cfg);
    const OptimizationState before = s;
    s = additive_step(s, cfg);

    // The input state is untouched.
    CHECK(before.iteration == k);
    CHECK(before.history.size() == static_cast<std::size_t>(k));

    const HistoryEntry& h = s.history.back();
    CHECK(h.iteration == k + 1);
    CHECK(s.iteration == static_cast<int>(s.history.size()));
    CHECK(std::isfinite(h.purcell));
    CHECK(h.purcell > 0.0);
    for (std::size_t c = 0; c < map.values.size(); ++c) {
      if (map.mask[c]) CHECK(h.delta_f >= map.values[c]);
    }
    for (const CellIndex& c : block_cells(h.cell, cfg.block_size)) {
      CHECK(interior.contains(c));
      for (const Vec2& a : atom_positions(cfg)) {
        CHECK((g.center(c) - a).norm() >= cfg.exclusion_radius);
      }
      CHECK(std::find(written.begin(), written.end(), c) == written.end());
      written.push_back(c);
    }
  }
  // eps differs from the start only on the recorded blocks.
  for (std::size_t k = 0; k < g.cell_count(); ++k) {
    const bool recorded = std::find(written.begin(), written.end(), g.cell(k)) != written.end();
    CHECK((s.eps[k] != s.initial_eps[k]) == recorded);
  }
}

TEST_CASE("a step without eligible cells fails") {
  RunConfig cfg = test::small_config();
  cfg.exclusion_radius = 100.0;
  const OptimizationState s = initial_state(cfg);
  CHECK(s.mask.count() == 0);
  CHECK_THROWS_AS(additive_step(s, cfg), NoEligibleCellsError);
  const AdditiveResult r = run_additive(cfg);
  CHECK(r.reason == StopReason::no_eligible_cells);
  CHECK(r.state.iteration == 0);
}

TEST_CASE("solver failure ends the run with the history so far") {
  RunConfig cfg = test::small_config();
  OptimizationState s = initial_state(cfg);
  s = additive_step(s, cfg);
  cfg.solver.method = SolverMethod::time_domain;
  cfg.solver.ramp_cycles = 1.0;
  cfg.solver.settle_cycles = 0.0;
  cfg.solver.dft_cycles = 1;
  cfg.solver.max_cycles = 2.5;
  cfg.solver.convergence_tol = 1e-14;
  const AdditiveResult r = run_additive(s, cfg);
  CHECK(r.reason == StopReason::solver_failure);
  CHECK(r.state.iteration == 1);
  CHECK(r.state.history.size() == 1);
  CHECK(r.state.eps == s.eps);
}

TEST_CASE("identical configs give bit-identical histories") {
  RunConfig cfg = test::small_config();
  cfg.max_iterations = 6;
  const AdditiveResult a = run_additive(cfg);
  const AdditiveResult b = run_additive(cfg);
  CHECK(a.state.history.size() == 6);
  CHECK(history_csv(a.state.history) == history_csv(b.state.history));
  CHECK(a.state.eps == b.state.eps);
}

TEST_CASE("observer sees every accepted step") {
  RunConfig cfg = test::small_config();
  cfg.max_iterations = 3;
  std::vector<int> seen;
  run_additive(cfg, [&](const OptimizationState& s) { seen.push_back(s.iteration); });
  CHECK(seen == std::vector<int>{1, 2, 3});
}

TEST_CASE("an initial preset seeds the design") {
  RunConfig cfg = test::small_config();
  PresetSpec p;
  p.kind = PresetKind::circle;
  p.center = Vec2(0.0, 0.8);
  p.radius = 0.3;
  cfg.initial_design = p;
  const OptimizationState s = initial_state(cfg);
  CHECK_FALSE(s.eps.is_vacuum());
  CHECK(s.purcell() != 1.0);
  CHECK(s.eps == s.initial_eps);
}

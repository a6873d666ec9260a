#include "greenopt/optimize.hpp"

#include <sstream>

#include "greenopt/presets.hpp"

namespace greenopt {
namespace {

std::pair<GreensField, GreensField> solve_pair(const PermittivityGrid& eps, const RunConfig& cfg) {
  const DipoleSpec sources[2] = {cfg.donor, cfg.acceptor};
  std::vector<GreensField> f = solve_green_columns(eps, sources, cfg.solver);
  return {std::move(f[0]), std::move(f[1])};
}

CellMask anchors_for(const PermittivityGrid& eps, const RunConfig& cfg) {
  const std::vector<Vec2> atoms = atom_positions(cfg);
  return placement_mask(eps, interior_box(eps.grid(), cfg.solver), atoms, cfg.exclusion_radius,
                        cfg.block_size);
}

}  // namespace

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::max_iterations: return "max_iterations";
    case StopReason::no_improvement: return "no_improvement";
    case StopReason::no_eligible_cells: return "no_eligible_cells";
    case StopReason::solver_failure: return "solver_failure";
  }
  return "unknown";
}

std::vector<Vec2> atom_positions(const RunConfig& cfg) {
  return {cfg.donor.position, cfg.acceptor.position};
}

OptimizationState initial_state(const RunConfig& cfg) {
  cfg.validate();
  OptimizationState s;
  const CellBox interior = interior_box(cfg.grid, cfg.solver);
  if (cfg.initial_design) {
    PresetSpec preset = *cfg.initial_design;
    if (preset.keep_clear.empty()) preset.keep_clear = atom_positions(cfg);
    s.eps = generate(preset, cfg.grid, std::pair{interior.lo, interior.hi});
  } else {
    s.eps = PermittivityGrid::vacuum(cfg.grid);
  }
  s.initial_eps = s.eps;

  auto [vac_d, vac_a] = solve_pair(PermittivityGrid::vacuum(cfg.grid), cfg);
  s.gamma0 = ret_rate(vac_d, cfg.acceptor);
  if (!(s.gamma0 > 0.0)) {
    throw DomainError("vacuum transfer rate is zero for this geometry; the Purcell factor is undefined");
  }
  if (s.eps.is_vacuum()) {
    s.field_donor = std::move(vac_d);
    s.field_acceptor = std::move(vac_a);
  } else {
    auto [d, a] = solve_pair(s.eps, cfg);
    s.field_donor = std::move(d);
    s.field_acceptor = std::move(a);
  }
  s.gamma = ret_rate(*s.field_donor, cfg.acceptor);
  s.mask = anchors_for(s.eps, cfg);
  return s;
}

DeltaFMap current_delta_map(const OptimizationState& state, const RunConfig& cfg) {
  if (!state.field_donor || !state.field_acceptor) {
    throw DomainError("optimization state carries no fields; build it with initial_state");
  }
  return ret_delta_map(*state.field_donor, *state.field_acceptor, cfg.donor, cfg.acceptor,
                       state.mask);
}

OptimizationState additive_step(const OptimizationState& state, const RunConfig& cfg) {
  if (state.mask.count() == 0) throw NoEligibleCellsError("additive step: no eligible cells");
  const DeltaFMap map = current_delta_map(state, cfg);
  const CellIndex best = *map.argmax();

  const std::vector<CellIndex> block = block_cells(best, cfg.block_size);
  OptimizationState next;
  next.eps = state.eps.with_cells(block, cfg.eps_inclusion);
  auto [d, a] = solve_pair(next.eps, cfg);

  next.initial_eps = state.initial_eps;
  next.iteration = state.iteration + 1;
  next.history = state.history;
  next.gamma0 = state.gamma0;
  next.gamma = ret_rate(d, cfg.acceptor);
  next.rng_seed = state.rng_seed;
  next.field_donor = std::move(d);
  next.field_acceptor = std::move(a);
  next.mask = anchors_for(next.eps, cfg);
  next.history.push_back(
      {next.iteration, best, *map.value(best), next.gamma, next.gamma / next.gamma0});
  return next;
}

AdditiveResult run_additive(const RunConfig& cfg, const StepObserver& observer) {
  return run_additive(initial_state(cfg), cfg, observer);
}

AdditiveResult run_additive(OptimizationState state, const RunConfig& cfg,
                            const StepObserver& observer) {
  AdditiveResult result;
  while (state.iteration < cfg.max_iterations) {
    if (state.mask.count() == 0) {
      result.reason = StopReason::no_eligible_cells;
      result.message = "no eligible cells remain";
      break;
    }
    const DeltaFMap map = current_delta_map(state, cfg);
    if (!(*map.value(*map.argmax()) > 0.0)) {
      result.reason = StopReason::no_improvement;
      result.message = "best predicted change is not positive";
      break;
    }
    try {
      state = additive_step(state, cfg);
    } catch (const SolverError& e) {
      result.reason = StopReason::solver_failure;
      result.message = e.what();
      break;
    }
    if (observer) observer(state);
  }
  result.state = std::move(state);
  return result;
}

}  // namespace greenopt

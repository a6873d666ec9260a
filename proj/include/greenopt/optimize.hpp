#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "greenopt/config.hpp"
#include "greenopt/merit.hpp"
#include "greenopt/solver.hpp"

namespace greenopt {

struct HistoryEntry {
  int iteration = 0;  // 1-based step number
  CellIndex cell;     // block anchor
  double delta_f = 0.0;
  double gamma = 0.0;    // re-simulated after the block was written
  double purcell = 0.0;  // gamma / gamma0
  bool operator==(const HistoryEntry&) const = default;
};

/// Additive-scheme state. Steps are pure: each consumes a state and returns a
/// new one. The fields of the current design are cached so a step needs one
/// solve pair (on the updated design) rather than two.
struct OptimizationState {
  PermittivityGrid eps;
  PermittivityGrid initial_eps;
  int iteration = 0;
  std::vector<HistoryEntry> history;
  CellMask mask;  // anchors eligible for the next block
  double gamma0 = 0.0;
  double gamma = 0.0;
  // Ties in the argmax are broken by row-major order, so no randomness is
  // involved; the seed is recorded for completeness.
  std::uint64_t rng_seed = 0;

  std::optional<GreensField> field_donor;
  std::optional<GreensField> field_acceptor;

  double purcell() const { return gamma / gamma0; }
};

/// Atom positions in donor, acceptor order.
std::vector<Vec2> atom_positions(const RunConfig& cfg);

/// Design at iteration 0: the configured initial preset or vacuum. Solves the
/// vacuum reference and the fields of the starting design.
OptimizationState initial_state(const RunConfig& cfg);

/// Places one block at the argmax of the transfer-rate delta map and
/// re-simulates. Throws NoEligibleCellsError when the mask is empty and
/// propagates solver errors; the input state is never modified.
OptimizationState additive_step(const OptimizationState& state, const RunConfig& cfg);

/// The map the next step would use.
DeltaFMap current_delta_map(const OptimizationState& state, const RunConfig& cfg);

enum class StopReason { max_iterations, no_improvement, no_eligible_cells, solver_failure };
std::string to_string(StopReason r);

struct AdditiveResult {
  OptimizationState state;
  StopReason reason = StopReason::max_iterations;
  std::string message;
};

/// Called after every accepted step.
using StepObserver = std::function<void(const OptimizationState&)>;

/// Iterates additive_step until max_iterations, a non-positive best delta, an
/// empty mask, or a solver failure. Failures end the run with the history so
/// far.
AdditiveResult run_additive(const RunConfig& cfg, const StepObserver& observer = {});
AdditiveResult run_additive(OptimizationState state, const RunConfig& cfg,
                            const StepObserver& observer = {});

}  // namespace greenopt

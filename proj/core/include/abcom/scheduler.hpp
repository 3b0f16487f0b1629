#pragma once

#include <functional>

#include "abcom/power_model.hpp"

namespace abcom {

struct GridSpec {
  double resolution = 0.01;  // step size in each decision variable, (0, 1)
  int refine_levels = 0;     // successive 10x local refinements around the incumbent
};

void validate(const GridSpec& g);

struct NarrowSolveResult {
  NarrowSchedule schedule;
  double rate_bits = 0.0;  // bits per block
  EnergyBudget budget;
  bool feasible = false;
};

struct WideSolveResult {
  WideSchedule schedule;
  double rate_bits = 0.0;
  EnergyBudget budget;
  bool feasible = false;
};

/// Ideal per-frequency case with zero sensing time: kappa = 0, mu = 1 - tau,
/// tau* = (eta P_R - P_D) / (eta P_R + P_C). The energy constraint binds.
/// feasible is false when eta P_R <= P_D (the node cannot sustain itself);
/// the break-even schedule is still reported.
NarrowSolveResult solve_narrow_closed_form(const ScenarioParams& p);

/// Exhaustive search over (kappa, mu) on the open-interval grid, tau set from
/// the simplex of the chosen variant. Keeps points with positive time shares
/// and non-negative energy margin, returns the rate maximizer; ties broken by
/// smallest kappa, then smallest mu.
NarrowSolveResult solve_narrow_grid(const ScenarioParams& p, const GridSpec& g,
                                    ConstraintVariant variant);

/// Baseline without a sensing slot: kappa = 0, tau = 1 - mu, grid over mu.
NarrowSolveResult solve_narrow_no_sensing_grid(const ScenarioParams& p, const GridSpec& g);

/// Ideal wideband case with zero sensing time: alpha = 0,
/// gamma* = (P_C + P_D) / (eta P_R_w). feasible is false when
/// eta P_R_w <= P_C + P_D.
WideSolveResult solve_wide_closed_form(const ScenarioParams& p);

/// Exhaustive search over (alpha, gamma) on the open-interval grid; ties
/// broken by smallest alpha, then smallest gamma.
WideSolveResult solve_wide_grid(const ScenarioParams& p, const GridSpec& g);

/// Baseline without a compressive-sensing slot: alpha = 0, grid over gamma.
WideSolveResult solve_wide_no_sensing_grid(const ScenarioParams& p, const GridSpec& g);

/// Visit every open-interval base-grid candidate (feasible or not) in
/// deterministic order, with its energy budget and rate in bits per block.
/// The grid solvers reduce over exactly these candidates.
void for_each_narrow_candidate(
    const ScenarioParams& p, double resolution, ConstraintVariant variant,
    const std::function<void(const NarrowSchedule&, const EnergyBudget&, double)>& visit);
void for_each_narrow_no_sensing_candidate(
    const ScenarioParams& p, double resolution,
    const std::function<void(const NarrowSchedule&, const EnergyBudget&, double)>& visit);
void for_each_wide_candidate(
    const ScenarioParams& p, double resolution,
    const std::function<void(const WideSchedule&, const EnergyBudget&, double)>& visit);
void for_each_wide_no_sensing_candidate(
    const ScenarioParams& p, double resolution,
    const std::function<void(const WideSchedule&, const EnergyBudget&, double)>& visit);

}  // namespace abcom

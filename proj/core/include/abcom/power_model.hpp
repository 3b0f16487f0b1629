#pragma once

#include "abcom/channel.hpp"

namespace abcom {

/// Time-block structure of the per-frequency scheme. DoubleSensing charges a
/// sensing slot before both the harvesting and the backscatter phase
/// (tau + 2*kappa + mu = 1); SingleSensing charges one slot per block
/// (tau + kappa + mu = 1), which is the structure that reconciles the
/// reference operating points.
enum class ConstraintVariant { DoubleSensing, SingleSensing };

/// Number of sensing slots charged per block.
int sensing_slots(ConstraintVariant v);

struct NarrowSchedule {
  double tau = 0.0;    // backscatter fraction
  double kappa = 0.0;  // per-slot sensing fraction
  double mu = 0.0;     // harvesting fraction
  ConstraintVariant variant = ConstraintVariant::DoubleSensing;
};

struct WideSchedule {
  double alpha = 0.0;  // sensing time fraction
  double gamma = 0.0;  // received-power fraction routed to the harvester
};

/// Physical constants of one deployment. All powers in linear watts, times in
/// seconds, rates in Hz.
struct ScenarioParams {
  double T = 10.0;        // block period
  double eta = 1.0;       // energy-harvesting efficiency, (0, 1]
  double beta = 1.0;      // backscatter reflection coefficient, (0, 1]
  PowerWatts P_C;         // backscatter circuit power
  PowerWatts P_D;         // data-sensing module power
  PowerWatts e_s;         // per-sample sensing energy rate
  double f_s = 1000.0;    // per-signal sample rate
  int N_s = 1000;         // samples per detection (sensing module only)
  int M_w = 40;           // wideband channel count
  double B_w = 1.0;       // rate bandwidth
  PowerWatts noise_rx;    // noise at the backscatter receiver
  PowerWatts P_R;         // received source power at the node (per-frequency)
  PowerWatts P_R_w;       // aggregate received wideband power
  PathLossParams pathloss_up;    // node -> backscatter receiver
  PathLossParams pathloss_down;  // source tower -> node
};

void validate(const ScenarioParams& p);

/// Schedules are accepted on the closed box [0, 1] (the ideal-case closed
/// forms and boundary probes sit on it); the grid optimizers enforce the open
/// interval of the optimization problems themselves. The narrow simplex must
/// hold within 1e-9 for the schedule's variant.
void validate(const NarrowSchedule& s);
void validate(const WideSchedule& s);

/// The four energy terms of the causality constraint, in joules.
struct EnergyBudget {
  double E_H = 0.0;  // harvested
  double E_S = 0.0;  // spectrum sensing
  double E_B = 0.0;  // backscatter circuit
  double E_D = 0.0;  // data sensing
  double margin = 0.0;  // E_H - E_S - E_B - E_D
};

EnergyBudget energy_budget_narrow(const NarrowSchedule& s, const ScenarioParams& p);
EnergyBudget energy_budget_wide(const WideSchedule& s, const ScenarioParams& p);

/// True iff the harvested energy covers all consumption (margin >= 0).
bool causality_satisfied(const EnergyBudget& b);

namespace detail {

// Same arithmetic as the checked functions, no validation. For tight
// enumeration loops whose inputs were validated once up front.
EnergyBudget budget_narrow_unchecked(const NarrowSchedule& s, const ScenarioParams& p) noexcept;
EnergyBudget budget_wide_unchecked(const WideSchedule& s, const ScenarioParams& p) noexcept;

}  // namespace detail

}  // namespace abcom

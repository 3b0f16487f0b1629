#include "abcom/power_model.hpp"

#include <cmath>
#include <stdexcept>

namespace abcom {

namespace {

constexpr double kSimplexTol = 1e-9;

void require_power(PowerWatts p, const char* what) {
  if (!std::isfinite(p.value) || p.value < 0.0) {
    throw std::invalid_argument(std::string(what) + " must be a non-negative finite power");
  }
}

void require_unit_fraction(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

int sensing_slots(ConstraintVariant v) {
  return v == ConstraintVariant::DoubleSensing ? 2 : 1;
}

void validate(const ScenarioParams& p) {
  if (!(p.T > 0.0) || !std::isfinite(p.T)) {
    throw std::invalid_argument("block period T must be > 0");
  }
  if (!(p.eta > 0.0) || p.eta > 1.0) {
    throw std::invalid_argument("harvesting efficiency eta must be in (0, 1]");
  }
  if (!(p.beta >= 0.0) || p.beta > 1.0) {
    throw std::invalid_argument("reflection coefficient beta must be in [0, 1]");
  }
  require_power(p.P_C, "P_C");
  require_power(p.P_D, "P_D");
  require_power(p.e_s, "e_s");
  require_power(p.noise_rx, "noise_rx");
  require_power(p.P_R, "P_R");
  require_power(p.P_R_w, "P_R_w");
  if (!(p.f_s >= 0.0) || !std::isfinite(p.f_s)) {
    throw std::invalid_argument("sample rate f_s must be non-negative");
  }
  if (p.N_s < 1) throw std::invalid_argument("N_s must be >= 1");
  if (p.M_w < 1) throw std::invalid_argument("M_w must be >= 1");
  if (!(p.B_w >= 0.0) || !std::isfinite(p.B_w)) {
    throw std::invalid_argument("bandwidth B_w must be non-negative");
  }
  validate(p.pathloss_up);
  validate(p.pathloss_down);
}

void validate(const NarrowSchedule& s) {
  require_unit_fraction(s.tau, "tau");
  require_unit_fraction(s.kappa, "kappa");
  require_unit_fraction(s.mu, "mu");
  const double sum = s.tau + sensing_slots(s.variant) * s.kappa + s.mu;
  if (std::fabs(sum - 1.0) > kSimplexTol) {
    throw std::invalid_argument("narrow schedule violates its time simplex");
  }
}

void validate(const WideSchedule& s) {
  require_unit_fraction(s.alpha, "alpha");
  require_unit_fraction(s.gamma, "gamma");
}

namespace detail {

EnergyBudget budget_narrow_unchecked(const NarrowSchedule& s, const ScenarioParams& p) noexcept {
  EnergyBudget b;
  b.E_H = s.mu * p.T * p.eta * p.P_R.value;
  b.E_S = sensing_slots(s.variant) * s.kappa * p.T * p.e_s.value * p.f_s;
  b.E_B = s.tau * p.T * p.P_C.value;
  b.E_D = p.P_D.value * p.T;
  b.margin = b.E_H - b.E_S - b.E_B - b.E_D;
  return b;
}

EnergyBudget budget_wide_unchecked(const WideSchedule& s, const ScenarioParams& p) noexcept {
  EnergyBudget b;
  b.E_H = (1.0 - s.alpha) * p.T * p.eta * s.gamma * p.P_R_w.value;
  b.E_S = p.e_s.value * p.f_s * p.M_w * s.alpha * p.T;
  b.E_B = (1.0 - s.alpha) * p.T * p.P_C.value;
  b.E_D = p.P_D.value * p.T;
  b.margin = b.E_H - b.E_S - b.E_B - b.E_D;
  return b;
}

}  // namespace detail

EnergyBudget energy_budget_narrow(const NarrowSchedule& s, const ScenarioParams& p) {
  validate(s);
  validate(p);
  return detail::budget_narrow_unchecked(s, p);
}

EnergyBudget energy_budget_wide(const WideSchedule& s, const ScenarioParams& p) {
  validate(s);
  validate(p);
  return detail::budget_wide_unchecked(s, p);
}

bool causality_satisfied(const EnergyBudget& b) {
  return b.margin >= 0.0;
}

}  // namespace abcom

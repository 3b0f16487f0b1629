#include "abcom/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "abcom/rate.hpp"

namespace abcom {

namespace {

constexpr double kTimeEps = 1e-12;
constexpr double kMinStep = 1e-11;

int max_grid_index(double res) {
  return static_cast<int>(std::floor((1.0 - 1e-12) / res));
}

// Candidate order for the narrow problem. The rate is tau times a constant,
// so maximizing it equals minimizing the integer tau-deficit key; with a zero
// rate scale every candidate ties and the (kappa, mu) tie-break decides.
struct NarrowBest {
  bool any = false;
  long key = 0;
  int ik = 0;
  int im = 0;
  double kappa = 0.0;
  double mu = 0.0;
  double tau = 0.0;
};

bool narrow_better(long key, int ik, int im, const NarrowBest& b) {
  if (!b.any) return true;
  if (key != b.key) return key < b.key;
  if (ik != b.ik) return ik < b.ik;
  return im < b.im;
}

struct WideBest {
  bool any = false;
  double rate = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
};

bool wide_better(double rate, double alpha, double gamma, const WideBest& b) {
  if (!b.any) return true;
  if (rate != b.rate) return rate > b.rate;
  if (alpha != b.alpha) return alpha < b.alpha;
  return gamma < b.gamma;
}

// Same association order as rate_wide, so the reduction and the reported
// rate agree bit for bit.
double wide_rate_at(const ScenarioParams& p, double pathloss_up,
                    double alpha, double gamma) {
  const double snr = p.beta * (1.0 - gamma) * p.P_R_w.value * pathloss_up /
                     p.noise_rx.value;
  return (1.0 - alpha) * p.T * p.B_w * std::log2(1.0 + snr);
}

}  // namespace

void validate(const GridSpec& g) {
  if (!(g.resolution > 0.0) || !(g.resolution < 1.0) || !std::isfinite(g.resolution)) {
    throw std::invalid_argument("grid resolution must lie in (0, 1)");
  }
  if (g.refine_levels < 0) {
    throw std::invalid_argument("refine_levels must be >= 0");
  }
}

NarrowSolveResult solve_narrow_closed_form(const ScenarioParams& p) {
  validate(p);
  const double harvest = p.eta * p.P_R.value;
  const double denom = harvest + p.P_C.value;
  double tau = 0.0;
  if (denom > 0.0) {
    tau = std::clamp((harvest - p.P_D.value) / denom, 0.0, 1.0);
  }
  NarrowSolveResult r;
  r.schedule = {tau, 0.0, 1.0 - tau, ConstraintVariant::SingleSensing};
  r.budget = energy_budget_narrow(r.schedule, p);
  r.rate_bits = rate_narrow(r.schedule, p);
  r.feasible = denom > 0.0 && harvest > p.P_D.value;
  return r;
}

NarrowSolveResult solve_narrow_grid(const ScenarioParams& p, const GridSpec& g,
                                    ConstraintVariant variant) {
  validate(p);
  validate(g);
  const bool rate_positive = narrow_rate_scale(p) > 0.0;
  const int c = sensing_slots(variant);
  const int kmax = max_grid_index(g.resolution);

  NarrowBest best;
  NarrowSchedule s{0.0, 0.0, 0.0, variant};
  for (int ik = 1; ik <= kmax; ++ik) {
    const double kappa = ik * g.resolution;
    if (1.0 - c * kappa - g.resolution <= kTimeEps) break;
    for (int im = 1; im <= kmax; ++im) {
      const double mu = im * g.resolution;
      const double tau = 1.0 - c * kappa - mu;
      if (tau <= kTimeEps) break;
      s.tau = tau;
      s.kappa = kappa;
      s.mu = mu;
      if (detail::budget_narrow_unchecked(s, p).margin < 0.0) continue;
      const long key = rate_positive ? static_cast<long>(c) * ik + im : 0;
      if (narrow_better(key, ik, im, best)) {
        best = {true, key, ik, im, kappa, mu, tau};
      }
    }
  }

  NarrowSolveResult r;
  r.schedule.variant = variant;
  if (!best.any) return r;

  double kappa0 = best.kappa;
  double mu0 = best.mu;
  double step = g.resolution;
  for (int level = 0; level < g.refine_levels; ++level) {
    step /= 10.0;
    if (step < kMinStep) break;
    NarrowBest wbest;
    for (int jk = -10; jk <= 10; ++jk) {
      const double kappa = kappa0 + jk * step;
      if (kappa <= kTimeEps || kappa >= 1.0 - kTimeEps) continue;
      for (int jm = -10; jm <= 10; ++jm) {
        const double mu = mu0 + jm * step;
        if (mu <= kTimeEps || mu >= 1.0 - kTimeEps) continue;
        const double tau = 1.0 - c * kappa - mu;
        if (tau <= kTimeEps) continue;
        s.tau = tau;
        s.kappa = kappa;
        s.mu = mu;
        if (detail::budget_narrow_unchecked(s, p).margin < 0.0) continue;
        const long key = rate_positive ? static_cast<long>(c) * jk + jm : 0;
        if (narrow_better(key, jk, jm, wbest)) {
          wbest = {true, key, jk, jm, kappa, mu, tau};
        }
      }
    }
    kappa0 = wbest.kappa;  // the incumbent is in the window, wbest.any holds
    mu0 = wbest.mu;
  }

  r.schedule = {1.0 - c * kappa0 - mu0, kappa0, mu0, variant};
  r.budget = energy_budget_narrow(r.schedule, p);
  r.rate_bits = rate_narrow(r.schedule, p);
  r.feasible = true;
  return r;
}

NarrowSolveResult solve_narrow_no_sensing_grid(const ScenarioParams& p, const GridSpec& g) {
  validate(p);
  validate(g);
  narrow_rate_scale(p);  // enforces noise > 0; ordering is scale-independent here
  const int kmax = max_grid_index(g.resolution);

  NarrowBest best;
  NarrowSchedule s{0.0, 0.0, 0.0, ConstraintVariant::SingleSensing};
  for (int im = 1; im <= kmax; ++im) {
    const double mu = im * g.resolution;
    const double tau = 1.0 - mu;
    if (tau <= kTimeEps) break;
    s.tau = tau;
    s.mu = mu;
    if (detail::budget_narrow_unchecked(s, p).margin < 0.0) continue;
    best = {true, 0, 0, im, 0.0, mu, tau};
    break;  // mu ascending: the first feasible point maximizes tau
  }

  NarrowSolveResult r;
  r.schedule.variant = ConstraintVariant::SingleSensing;
  if (!best.any) return r;

  double mu0 = best.mu;
  double step = g.resolution;
  for (int level = 0; level < g.refine_levels; ++level) {
    step /= 10.0;
    if (step < kMinStep) break;
    for (int jm = -10; jm <= 10; ++jm) {
      const double mu = mu0 + jm * step;
      if (mu <= kTimeEps || mu >= 1.0 - kTimeEps) continue;
      s.tau = 1.0 - mu;
      s.mu = mu;
      if (detail::budget_narrow_unchecked(s, p).margin < 0.0) continue;
      mu0 = mu;  // first feasible in ascending jm, i.e. smallest mu in window
      break;
    }
  }

  r.schedule = {1.0 - mu0, 0.0, mu0, ConstraintVariant::SingleSensing};
  r.budget = energy_budget_narrow(r.schedule, p);
  r.rate_bits = rate_narrow(r.schedule, p);
  r.feasible = true;
  return r;
}

WideSolveResult solve_wide_closed_form(const ScenarioParams& p) {
  validate(p);
  const double denom = p.eta * p.P_R_w.value;
  const double need = p.P_C.value + p.P_D.value;
  double gamma = 1.0;
  if (denom > 0.0) {
    gamma = std::min(need / denom, 1.0);
  } else if (need == 0.0) {
    gamma = 0.0;
  }
  WideSolveResult r;
  r.schedule = {0.0, gamma};
  r.budget = energy_budget_wide(r.schedule, p);
  r.rate_bits = rate_wide(r.schedule, p);
  r.feasible = denom > need;
  return r;
}

WideSolveResult solve_wide_grid(const ScenarioParams& p, const GridSpec& g) {
  validate(p);
  validate(g);
  if (!(p.noise_rx.value > 0.0)) {
    throw std::domain_error("receiver noise must be > 0 to evaluate a rate");
  }
  const double L = path_loss(p.pathloss_up);
  const int kmax = max_grid_index(g.resolution);

  WideBest best;
  WideSchedule s;
  for (int ia = 1; ia <= kmax; ++ia) {
    s.alpha = ia * g.resolution;
    // The margin is non-decreasing and the rate non-increasing in gamma, so
    // the smallest feasible gamma is this alpha's maximizer.
    for (int ig = 1; ig <= kmax; ++ig) {
      s.gamma = ig * g.resolution;
      if (detail::budget_wide_unchecked(s, p).margin < 0.0) continue;
      const double rate = wide_rate_at(p, L, s.alpha, s.gamma);
      if (wide_better(rate, s.alpha, s.gamma, best)) {
        best = {true, rate, s.alpha, s.gamma};
      }
      break;
    }
  }

  WideSolveResult r;
  if (!best.any) return r;

  double alpha0 = best.alpha;
  double gamma0 = best.gamma;
  double step = g.resolution;
  for (int level = 0; level < g.refine_levels; ++level) {
    step /= 10.0;
    if (step < kMinStep) break;
    WideBest wbest;
    for (int ja = -10; ja <= 10; ++ja) {
      const double alpha = alpha0 + ja * step;
      if (alpha <= kTimeEps || alpha >= 1.0 - kTimeEps) continue;
      for (int jg = -10; jg <= 10; ++jg) {
        const double gamma = gamma0 + jg * step;
        if (gamma <= kTimeEps || gamma >= 1.0 - kTimeEps) continue;
        s.alpha = alpha;
        s.gamma = gamma;
        if (detail::budget_wide_unchecked(s, p).margin < 0.0) continue;
        const double rate = wide_rate_at(p, L, alpha, gamma);
        if (wide_better(rate, alpha, gamma, wbest)) {
          wbest = {true, rate, alpha, gamma};
        }
      }
    }
    alpha0 = wbest.alpha;
    gamma0 = wbest.gamma;
  }

  r.schedule = {alpha0, gamma0};
  r.budget = energy_budget_wide(r.schedule, p);
  r.rate_bits = rate_wide(r.schedule, p);
  r.feasible = true;
  return r;
}

WideSolveResult solve_wide_no_sensing_grid(const ScenarioParams& p, const GridSpec& g) {
  validate(p);
  validate(g);
  if (!(p.noise_rx.value > 0.0)) {
    throw std::domain_error("receiver noise must be > 0 to evaluate a rate");
  }
  const int kmax = max_grid_index(g.resolution);

  WideBest best;
  WideSchedule s{0.0, 0.0};
  for (int ig = 1; ig <= kmax; ++ig) {
    s.gamma = ig * g.resolution;
    if (detail::budget_wide_unchecked(s, p).margin < 0.0) continue;
    best = {true, 0.0, 0.0, s.gamma};
    break;  // smallest feasible gamma maximizes the rate
  }

  WideSolveResult r;
  if (!best.any) return r;

  double gamma0 = best.gamma;
  double step = g.resolution;
  for (int level = 0; level < g.refine_levels; ++level) {
    step /= 10.0;
    if (step < kMinStep) break;
    for (int jg = -10; jg <= 10; ++jg) {
      const double gamma = gamma0 + jg * step;
      if (gamma <= kTimeEps || gamma >= 1.0 - kTimeEps) continue;
      s.gamma = gamma;
      if (detail::budget_wide_unchecked(s, p).margin < 0.0) continue;
      gamma0 = gamma;
      break;
    }
  }

  r.schedule = {0.0, gamma0};
  r.budget = energy_budget_wide(r.schedule, p);
  r.rate_bits = rate_wide(r.schedule, p);
  r.feasible = true;
  return r;
}

void for_each_narrow_candidate(
    const ScenarioParams& p, double resolution, ConstraintVariant variant,
    const std::function<void(const NarrowSchedule&, const EnergyBudget&, double)>& visit) {
  validate(p);
  validate(GridSpec{resolution, 0});
  const double scale = narrow_rate_scale(p);
  const int c = sensing_slots(variant);
  const int kmax = max_grid_index(resolution);
  NarrowSchedule s{0.0, 0.0, 0.0, variant};
  for (int ik = 1; ik <= kmax; ++ik) {
    s.kappa = ik * resolution;
    if (1.0 - c * s.kappa - resolution <= kTimeEps) break;
    for (int im = 1; im <= kmax; ++im) {
      s.mu = im * resolution;
      s.tau = 1.0 - c * s.kappa - s.mu;
      if (s.tau <= kTimeEps) break;
      visit(s, detail::budget_narrow_unchecked(s, p), s.tau * scale);
    }
  }
}

void for_each_narrow_no_sensing_candidate(
    const ScenarioParams& p, double resolution,
    const std::function<void(const NarrowSchedule&, const EnergyBudget&, double)>& visit) {
  validate(p);
  validate(GridSpec{resolution, 0});
  const double scale = narrow_rate_scale(p);
  const int kmax = max_grid_index(resolution);
  NarrowSchedule s{0.0, 0.0, 0.0, ConstraintVariant::SingleSensing};
  for (int im = 1; im <= kmax; ++im) {
    s.mu = im * resolution;
    s.tau = 1.0 - s.mu;
    if (s.tau <= kTimeEps) break;
    visit(s, detail::budget_narrow_unchecked(s, p), s.tau * scale);
  }
}

void for_each_wide_candidate(
    const ScenarioParams& p, double resolution,
    const std::function<void(const WideSchedule&, const EnergyBudget&, double)>& visit) {
  validate(p);
  validate(GridSpec{resolution, 0});
  if (!(p.noise_rx.value > 0.0)) {
    throw std::domain_error("receiver noise must be > 0 to evaluate a rate");
  }
  const double L = path_loss(p.pathloss_up);
  const int kmax = max_grid_index(resolution);
  WideSchedule s;
  for (int ia = 1; ia <= kmax; ++ia) {
    s.alpha = ia * resolution;
    for (int ig = 1; ig <= kmax; ++ig) {
      s.gamma = ig * resolution;
      visit(s, detail::budget_wide_unchecked(s, p), wide_rate_at(p, L, s.alpha, s.gamma));
    }
  }
}

void for_each_wide_no_sensing_candidate(
    const ScenarioParams& p, double resolution,
    const std::function<void(const WideSchedule&, const EnergyBudget&, double)>& visit) {
  validate(p);
  validate(GridSpec{resolution, 0});
  if (!(p.noise_rx.value > 0.0)) {
    throw std::domain_error("receiver noise must be > 0 to evaluate a rate");
  }
  const double L = path_loss(p.pathloss_up);
  const int kmax = max_grid_index(resolution);
  WideSchedule s{0.0, 0.0};
  for (int ig = 1; ig <= kmax; ++ig) {
    s.gamma = ig * resolution;
    visit(s, detail::budget_wide_unchecked(s, p), wide_rate_at(p, L, 0.0, s.gamma));
  }
}

}  // namespace abcom

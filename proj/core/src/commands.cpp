#include "abcom/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "abcom/outage.hpp"
#include "abcom/rate.hpp"

namespace abcom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ScenarioParams with_mode(const ScenarioParams& base, bool detection_on,
                         const DetectionModeOverrides& ov) {
  ScenarioParams p = base;
  p.eta = detection_on ? ov.eta_on : ov.eta_off;
  p.beta = detection_on ? ov.beta_on : ov.beta_off;
  return p;
}

CommandOutput usage_failure(CommandOutput out, const std::string& what) {
  out.exit_code = kUsageError;
  out.warnings.push_back(what);
  return out;
}

std::vector<double> sweep_grid(double from, double to, int points) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    xs.push_back(from);
    return xs;
  }
  const double step = (to - from) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    xs.push_back(from + static_cast<double>(i) * step);
  }
  return xs;
}

}  // namespace

CommandOutput cmd_optimize_narrow(const Scenario& sc, bool with_sensing,
                                  const DetectionModeOverrides& ov) {
  CommandOutput out;
  out.table.header = {"kappa", "mu", "tau", "rate_bits", "margin_joules", "is_optimum"};
  const ScenarioParams p = with_mode(sc.params, with_sensing, ov);

  NarrowSolveResult res;
  const auto emit = [&](const NarrowSchedule& s, const EnergyBudget& b, double rate) {
    if (b.margin >= 0.0) {
      out.table.rows.push_back({s.kappa, s.mu, s.tau, rate, b.margin, 0.0});
    }
  };
  if (with_sensing) {
    res = solve_narrow_grid(p, sc.grid, sc.variant);
    for_each_narrow_candidate(p, sc.grid.resolution, sc.variant, emit);
  } else {
    res = solve_narrow_no_sensing_grid(p, sc.grid);
    for_each_narrow_no_sensing_candidate(p, sc.grid.resolution, emit);
  }

  if (!res.feasible) {
    out.table.rows.clear();
    out.exit_code = kInfeasible;
    out.warnings.push_back("no schedule satisfies energy causality for this scenario");
    return out;
  }
  out.table.rows.push_back({res.schedule.kappa, res.schedule.mu, res.schedule.tau,
                            res.rate_bits, res.budget.margin, 1.0});
  return out;
}

CommandOutput cmd_optimize_wide(const Scenario& sc, bool with_cs,
                                const DetectionModeOverrides& ov) {
  CommandOutput out;
  out.table.header = {"alpha", "gamma", "rate_bits", "margin_joules", "is_optimum"};
  const ScenarioParams p = with_mode(sc.params, with_cs, ov);

  WideSolveResult res;
  const auto emit = [&](const WideSchedule& s, const EnergyBudget& b, double rate) {
    if (b.margin >= 0.0) {
      out.table.rows.push_back({s.alpha, s.gamma, rate, b.margin, 0.0});
    }
  };
  if (with_cs) {
    res = solve_wide_grid(p, sc.grid);
    for_each_wide_candidate(p, sc.grid.resolution, emit);
  } else {
    res = solve_wide_no_sensing_grid(p, sc.grid);
    for_each_wide_no_sensing_candidate(p, sc.grid.resolution, emit);
  }

  if (!res.feasible) {
    out.table.rows.clear();
    out.exit_code = kInfeasible;
    out.warnings.push_back("no power split satisfies energy causality for this scenario");
    return out;
  }
  out.table.rows.push_back(
      {res.schedule.alpha, res.schedule.gamma, res.rate_bits, res.budget.margin, 1.0});
  return out;
}

CommandOutput cmd_sweep_time(const Scenario& sc, const std::vector<double>& t_values,
                             bool per_second, const DetectionModeOverrides& ov) {
  CommandOutput out;
  out.table.header = {"T", "rate_narrow_sensing", "rate_narrow_plain", "rate_wide_cs",
                      "rate_wide_plain"};
  if (t_values.empty()) {
    return usage_failure(std::move(out), "sweep-time needs at least one block period");
  }
  for (double t : t_values) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      return usage_failure(std::move(out), "block periods must be positive and finite");
    }
  }

  bool any_infeasible = false;
  for (double t : t_values) {
    ScenarioParams on = with_mode(sc.params, true, ov);
    ScenarioParams off = with_mode(sc.params, false, ov);
    on.T = t;
    off.T = t;
    const NarrowSolveResult ns = solve_narrow_grid(on, sc.grid, sc.variant);
    const NarrowSolveResult np = solve_narrow_no_sensing_grid(off, sc.grid);
    const WideSolveResult ws = solve_wide_grid(on, sc.grid);
    const WideSolveResult wp = solve_wide_no_sensing_grid(off, sc.grid);
    const auto cell = [&](bool feasible, double rate) {
      if (!feasible) {
        any_infeasible = true;
        return kNaN;
      }
      return per_second ? rate / t : rate;
    };
    out.table.rows.push_back({t, cell(ns.feasible, ns.rate_bits),
                              cell(np.feasible, np.rate_bits),
                              cell(ws.feasible, ws.rate_bits),
                              cell(wp.feasible, wp.rate_bits)});
  }
  if (any_infeasible) {
    out.exit_code = kInfeasible;
    out.warnings.push_back("one or more modes are infeasible at the swept periods");
  }
  return out;
}

CommandOutput cmd_outage_curve(const Scenario& sc, const OutageSweepSpec& spec) {
  CommandOutput out;
  if (spec.points < 1) {
    return usage_failure(std::move(out), "outage sweep needs at least one grid point");
  }
  if (!(spec.from <= spec.to) || !std::isfinite(spec.from) || !std::isfinite(spec.to)) {
    return usage_failure(std::move(out), "outage sweep range must be finite with from <= to");
  }
  if (spec.mc_samples < 1) {
    return usage_failure(std::move(out), "mc_samples must be >= 1");
  }
  std::vector<double> ms = spec.m_values.empty()
                               ? std::vector<double>{sc.fading.m}
                               : spec.m_values;
  for (double m : ms) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      return usage_failure(std::move(out), "Nakagami orders must be > 0");
    }
  }
  const std::vector<double> xs = sweep_grid(spec.from, spec.to, spec.points);
  const SnrMapping snr = sc.snr_mapping();
  bool any_flagged = false;

  if (spec.axis == OutageSweepAxis::Distance) {
    if (!(spec.target_pout > 0.0) || !(spec.target_pout < 1.0)) {
      return usage_failure(std::move(out), "target outage must lie in (0, 1)");
    }
    for (double d : xs) {
      if (!(d > 0.0)) {
        return usage_failure(std::move(out), "distances must be > 0");
      }
    }
    out.table.header = {"d_meters", "m",       "p_th_watts", "p_t_min_watts",
                        "pout_quad", "pout_mc", "flagged"};
    // p_th depends on m only; solve once per order
    std::map<double, double> p_th_by_m;
    for (double m : ms) {
      FadingParams f = sc.fading;
      f.m = m;
      try {
        p_th_by_m[m] = invert_threshold(spec.target_pout, f, sc.params.noise_rx, spec.quad).value;
      } catch (const NumericalError&) {
        p_th_by_m[m] = kNaN;
      }
    }
    for (double d : xs) {
      for (double m : ms) {
        FadingParams f = sc.fading;
        f.m = m;
        const double p_th = p_th_by_m[m];
        if (std::isnan(p_th)) {
          any_flagged = true;
          out.table.rows.push_back({d, m, kNaN, kNaN, kNaN, kNaN, 1.0});
          continue;
        }
        PathLossParams pl = sc.params.pathloss_up;
        pl.d = d;
        const double p_t = transmit_power_threshold({p_th}, pl).value;
        const double gamma_th = snr_of_power({p_th}, snr);
        double pout = kNaN;
        double flagged = 0.0;
        try {
          pout = outage_probability(gamma_th, f, spec.quad);
        } catch (const NumericalError&) {
          flagged = 1.0;
          any_flagged = true;
        }
        const double mc = outage_monte_carlo(gamma_th, f, spec.mc_samples, spec.seed);
        out.table.rows.push_back({d, m, p_th, p_t, pout, mc, flagged});
      }
    }
  } else {
    const char* axis_label = spec.axis == OutageSweepAxis::GammaTh ? "gamma_th"
                             : spec.axis == OutageSweepAxis::ReceivedPower
                                 ? "p_th_watts"
                                 : "p_t_watts";
    out.table.header = {axis_label,  "m",          "gamma_th", "pout_quad",
                        "pout_mc",   "quad_error", "quad_intervals", "flagged"};
    const double loss_up = path_loss(sc.params.pathloss_up);
    for (double x : xs) {
      double gamma_th = x;
      if (spec.axis == OutageSweepAxis::ReceivedPower) {
        gamma_th = snr_of_power({x}, snr);
      } else if (spec.axis == OutageSweepAxis::TransmitPower) {
        gamma_th = snr_of_power({x * loss_up}, snr);
      }
      if (!(gamma_th >= 0.0)) {
        return usage_failure(std::move(out), "sweep values must map to gamma_th >= 0");
      }
      for (double m : ms) {
        FadingParams f = sc.fading;
        f.m = m;
        double pout = kNaN;
        double err = kNaN;
        double intervals = 0.0;
        double flagged = 0.0;
        try {
          const OutageResult r = outage_probability_full(gamma_th, f, spec.quad);
          pout = r.pout;
          err = r.quad_error;
          intervals = r.quad_intervals;
        } catch (const NumericalError&) {
          flagged = 1.0;
          any_flagged = true;
        }
        const double mc = outage_monte_carlo(gamma_th, f, spec.mc_samples, spec.seed);
        out.table.rows.push_back({x, m, gamma_th, pout, mc, err, intervals, flagged});
      }
    }
  }

  if (any_flagged) {
    out.exit_code = kNumericalFailure;
    out.warnings.push_back("quadrature failed on one or more flagged rows");
  }
  return out;
}

CommandOutput cmd_threshold(const Scenario& sc, double target_pout,
                            const QuadratureSpec& quad) {
  CommandOutput out;
  out.table.header = {"target_pout", "lambda_b_lower_watts", "lambda_b_upper_watts",
                      "p_t_min_watts"};
  if (!(target_pout > 0.0) || !(target_pout < 1.0)) {
    return usage_failure(std::move(out), "target outage must lie in (0, 1)");
  }

  double lower = kNaN;
  try {
    lower = invert_threshold(target_pout, sc.fading, sc.params.noise_rx, quad).value;
  } catch (const NumericalError& e) {
    out.exit_code = kNumericalFailure;
    out.warnings.push_back(std::string("threshold inversion failed: ") + e.what());
    return out;
  }

  double upper = kNaN;
  if (sc.bank) {
    const DetectionOutcome det = detect(*sc.bank, sc.lambda_h, sc.lambda_h);
    if (det.harvest_set.empty()) {
      out.warnings.push_back(
          "no channels above lambda_h: upper bound of lambda_b is undefined");
    } else {
      upper = 0.0;
      for (std::size_t i : det.harvest_set) {
        upper = std::max(upper, sc.bank->per_channel_power[i].value);
      }
    }
  } else {
    out.warnings.push_back("no channel bank configured: upper bound of lambda_b is undefined");
  }

  if (!std::isnan(upper) && lower > upper) {
    out.warnings.push_back(
        "no admissible lambda_b: the outage lower bound exceeds the strongest detected "
        "channel");
  }

  const double p_t_min = transmit_power_threshold({lower}, sc.params.pathloss_up).value;
  out.table.rows.push_back({target_pout, lower, upper, p_t_min});
  return out;
}

CommandOutput cmd_detect(const Scenario& sc, std::optional<PowerWatts> lambda_b) {
  CommandOutput out;
  out.table.header = {"channel_index", "frequency_hz", "power_watts", "in_harvest",
                      "in_backscatter"};
  if (!sc.bank) {
    return usage_failure(std::move(out), "detect needs a channel bank in [sources]");
  }
  const PowerWatts lb = lambda_b.value_or(sc.lambda_h);
  const DetectionOutcome det = detect(*sc.bank, sc.lambda_h, lb);

  const std::size_t n = sc.bank->per_channel_power.size();
  std::vector<double> in_h(n, 0.0);
  std::vector<double> in_b(n, 0.0);
  for (std::size_t i : det.harvest_set) in_h[i] = 1.0;
  for (std::size_t i : det.backscatter_set) in_b[i] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.table.rows.push_back({static_cast<double>(i), sc.bank->frequency_hz[i],
                              sc.bank->per_channel_power[i].value, in_h[i], in_b[i]});
  }
  // summary row: aggregate harvested power and set sizes
  out.table.rows.push_back({-1.0, 0.0, det.aggregate_power.value,
                            static_cast<double>(det.harvest_set.size()),
                            static_cast<double>(det.backscatter_set.size())});
  return out;
}

}  // namespace abcom

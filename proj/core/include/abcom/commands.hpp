#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abcom/csv.hpp"
#include "abcom/scenario.hpp"

namespace abcom {

/// CLI exit statuses.
enum ExitCode : int {
  kOk = 0,
  kInfeasible = 2,
  kNumericalFailure = 3,
  kUsageError = 64,
};

struct CommandOutput {
  CsvTable table;
  int exit_code = kOk;
  std::vector<std::string> warnings;
};

/// Efficiency/reflectivity applied by the optimize commands per mode. With
/// detection on, threshold-filtered signals harvest and modulate perfectly;
/// the baseline without detection halves both.
struct DetectionModeOverrides {
  double eta_on = 1.0;
  double beta_on = 1.0;
  double eta_off = 0.5;
  double beta_off = 0.5;
};

/// Rate surface over (kappa, mu) plus the optimum row (is_optimum = 1).
CommandOutput cmd_optimize_narrow(const Scenario& sc, bool with_sensing,
                                  const DetectionModeOverrides& ov = {});

/// Rate surface over (alpha, gamma) plus the optimum row.
CommandOutput cmd_optimize_wide(const Scenario& sc, bool with_cs,
                                const DetectionModeOverrides& ov = {});

/// Optimal rates of all four modes per block period T.
CommandOutput cmd_sweep_time(const Scenario& sc, const std::vector<double>& t_values,
                             bool per_second, const DetectionModeOverrides& ov = {});

enum class OutageSweepAxis { GammaTh, ReceivedPower, TransmitPower, Distance };

struct OutageSweepSpec {
  OutageSweepAxis axis = OutageSweepAxis::GammaTh;
  double from = 0.0;
  double to = 1.0;
  int points = 21;
  std::vector<double> m_values;  // empty: the scenario's m
  std::int64_t mc_samples = 100000;
  std::uint64_t seed = 12345;
  double target_pout = 0.1;  // Distance sweep only
  QuadratureSpec quad;
};

/// Quadrature and Monte-Carlo outage side by side, one row per grid point per
/// Nakagami order. Rows whose quadrature fails are flagged and the command
/// exits with kNumericalFailure.
CommandOutput cmd_outage_curve(const Scenario& sc, const OutageSweepSpec& spec);

/// Bounds of the backscatter detection threshold: lower from the outage
/// inversion, upper from the strongest detected channel, plus the minimum
/// transmit power for the lower bound.
CommandOutput cmd_threshold(const Scenario& sc, double target_pout,
                            const QuadratureSpec& quad = {});

/// Per-channel detection table for the scenario's bank. lambda_b defaults to
/// the harvesting threshold when not supplied.
CommandOutput cmd_detect(const Scenario& sc, std::optional<PowerWatts> lambda_b = {});

}  // namespace abcom

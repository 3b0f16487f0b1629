// Command-line front end: scenario ingestion, command dispatch, CSV emission.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abcom/commands.hpp"

namespace {

using namespace abcom;

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const auto comma = text.find(',', begin);
    const std::string token =
        text.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (token.empty() || pos != token.size()) {
      throw ConfigError(what + " must be a comma-separated list of numbers, got '" +
                        text + "'");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return values;
}

// Rescale bits-per-block rate columns to bits per second.
void rates_to_bps(CsvTable& table, double block_period) {
  for (std::size_t col = 0; col < table.header.size(); ++col) {
    if (table.header[col] != "rate_bits") continue;
    table.header[col] = "rate_bps";
    for (auto& row : table.rows) row[col] /= block_period;
  }
}

int emit(const CommandOutput& out, const std::string& out_path) {
  for (const auto& warning : out.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (out_path.empty()) {
    write_csv(out.table, std::cout);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file " << out_path << "\n";
      return kUsageError;
    }
    write_csv(out.table, f);
  }
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time scheduling and outage analysis for wireless-powered ambient "
               "backscatter IoT nodes"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::uint64_t seed = 12345;
  double grid_override = 0.0;
  bool bps = false;
  app.add_option("--scenario", scenario_path, "Scenario file")->required();
  app.add_option("--out", out_path, "Output CSV path (default: stdout)");
  app.add_option("--seed", seed, "Seed for Monte-Carlo columns");
  app.add_option("--grid", grid_override, "Override the solver grid resolution");
  app.add_flag("--bps", bps, "Report rates in bits/s instead of bits per block");

  std::string with_sensing = "on";
  auto* opt_narrow = app.add_subcommand("optimize-narrow",
                                        "Optimal (kappa, mu, tau) time split");
  opt_narrow->add_option("--with-sensing", with_sensing, "on|off")
      ->check(CLI::IsMember({"on", "off"}));
  opt_narrow->fallthrough();

  std::string with_cs = "on";
  auto* opt_wide = app.add_subcommand("optimize-wide",
                                      "Optimal (alpha, gamma) split for the wideband scheme");
  opt_wide->add_option("--with-cs", with_cs, "on|off")->check(CLI::IsMember({"on", "off"}));
  opt_wide->fallthrough();

  std::string t_list;
  auto* sweep_time = app.add_subcommand("sweep-time",
                                        "Optimal rates of all four modes per block period");
  sweep_time->add_option("--T", t_list, "Comma-separated block periods in seconds")
      ->required();
  sweep_time->fallthrough();

  std::string sweep_axis = "gamma-th";
  std::string m_list;
  OutageSweepSpec sweep;
  auto* outage_curve = app.add_subcommand("outage-curve",
                                          "Outage probability along a swept axis");
  outage_curve->add_option("--sweep", sweep_axis, "gamma-th|p-th|p-t|d")
      ->check(CLI::IsMember({"gamma-th", "p-th", "p-t", "d"}));
  outage_curve->add_option("--from", sweep.from, "Sweep start")->required();
  outage_curve->add_option("--to", sweep.to, "Sweep end")->required();
  outage_curve->add_option("--points", sweep.points, "Grid points (default 21)");
  outage_curve->add_option("--m", m_list, "Comma-separated Nakagami orders");
  outage_curve->add_option("--mc-samples", sweep.mc_samples, "Monte-Carlo sample count");
  outage_curve->add_option("--target", sweep.target_pout,
                           "Target outage for the distance sweep");
  outage_curve->add_option("--quad-rel-tol", sweep.quad.rel_tol, "Quadrature rel tol");
  outage_curve->add_option("--quad-abs-tol", sweep.quad.abs_tol, "Quadrature abs tol");
  outage_curve->add_option("--quad-max-subdiv", sweep.quad.max_subdivisions,
                           "Quadrature subdivision cap");
  outage_curve->fallthrough();

  double target_pout = 0.0;
  QuadratureSpec threshold_quad;
  auto* threshold = app.add_subcommand("threshold",
                                       "Bounds of the backscatter detection threshold");
  threshold->add_option("--target", target_pout, "Target outage in (0, 1)")->required();
  threshold->add_option("--quad-rel-tol", threshold_quad.rel_tol, "Quadrature rel tol");
  threshold->add_option("--quad-abs-tol", threshold_quad.abs_tol, "Quadrature abs tol");
  threshold->add_option("--quad-max-subdiv", threshold_quad.max_subdivisions,
                        "Quadrature subdivision cap");
  threshold->fallthrough();

  double lambda_b_dbm = 0.0;
  auto* detect_cmd = app.add_subcommand("detect", "Per-channel detection table");
  auto* lambda_b_opt = detect_cmd->add_option("--lambda-b-dbm", lambda_b_dbm,
                                              "Backscatter threshold in dBm "
                                              "(default: lambda_h)");
  detect_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    Scenario sc = load_scenario(scenario_path);
    if (grid_override != 0.0) {
      sc.grid.resolution = grid_override;
      validate(sc.grid);
    }

    CommandOutput out;
    if (opt_narrow->parsed()) {
      out = cmd_optimize_narrow(sc, with_sensing == "on");
      if (bps) rates_to_bps(out.table, sc.params.T);
    } else if (opt_wide->parsed()) {
      out = cmd_optimize_wide(sc, with_cs == "on");
      if (bps) rates_to_bps(out.table, sc.params.T);
    } else if (sweep_time->parsed()) {
      out = cmd_sweep_time(sc, parse_list(t_list, "--T"), bps);
    } else if (outage_curve->parsed()) {
      if (sweep_axis == "gamma-th") {
        sweep.axis = OutageSweepAxis::GammaTh;
      } else if (sweep_axis == "p-th") {
        sweep.axis = OutageSweepAxis::ReceivedPower;
      } else if (sweep_axis == "p-t") {
        sweep.axis = OutageSweepAxis::TransmitPower;
      } else {
        sweep.axis = OutageSweepAxis::Distance;
      }
      if (!m_list.empty()) sweep.m_values = parse_list(m_list, "--m");
      sweep.seed = seed;
      out = cmd_outage_curve(sc, sweep);
    } else if (threshold->parsed()) {
      out = cmd_threshold(sc, target_pout, threshold_quad);
    } else {
      std::optional<PowerWatts> lb;
      if (lambda_b_opt->count() > 0) lb = to_watts({lambda_b_dbm});
      out = cmd_detect(sc, lb);
    }
    return emit(out, out_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

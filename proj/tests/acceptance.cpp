// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "abcom/commands.hpp"
#include "abcom/outage.hpp"
#include "abcom/rate.hpp"
#include "abcom/scheduler.hpp"

namespace {

using namespace abcom;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

FadingParams avg_shadow_fading(double m) { return {m, -0.115, 0.161, 0.7}; }

// Simulation constants: T = 10 s, P_D = -30 dBm, P_C = -40 dBm,
// e_s = -33 dBm, f_s = 1 kHz, N = -40 dBm, M_w = 40.
ScenarioParams section_v_params() {
  ScenarioParams p;
  p.T = 10.0;
  p.eta = 1.0;
  p.beta = 1.0;
  p.P_D = {1e-6};
  p.P_C = {1e-7};
  p.e_s = {5.0118723362727228e-07};
  p.f_s = 1000.0;
  p.N_s = 1000;
  p.M_w = 40;
  p.noise_rx = {1e-7};
  p.B_w = 100.0;
  p.pathloss_up = {1.0, 2.0, 100.0};  // L(d_up) = 1e-4
  p.pathloss_down = {1.0, 2.0, 100.0};
  return p;
}

// Calibrated received powers: P_R in the window where the backscatter share
// caps at 0.78, P_R_w making the wideband SNR scale close to one.
ScenarioParams calibrated_params() {
  ScenarioParams p = section_v_params();
  p.P_R = {3e-5};
  p.P_R_w = {1e-3};
  return p;
}

Outcome criterion1_narrow_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const GridSpec grid{1e-3, 2};
  double worst_tau = 0.0;
  double worst_rate = 0.0;
  for (int i = 0; i < 50; ++i) {
    ScenarioParams p = section_v_params();
    p.e_s = {0.0};
    p.eta = 0.3 + 0.7 * unif(rng);
    p.P_R = {std::pow(10.0, -5.0 + 3.0 * unif(rng))};
    const double harvest = p.eta * p.P_R.value;
    p.P_D = {harvest * (0.01 + 0.69 * unif(rng))};
    p.P_C = {harvest * (1e-4 + 0.3 * unif(rng))};
    const NarrowSolveResult ideal = solve_narrow_closed_form(p);
    const NarrowSolveResult g =
        solve_narrow_grid(p, grid, ConstraintVariant::SingleSensing);
    if (!ideal.feasible || !g.feasible) {
      return {false, "scenario " + std::to_string(i) + " unexpectedly infeasible"};
    }
    worst_tau = std::max(worst_tau, std::fabs(g.schedule.tau - ideal.schedule.tau));
    worst_rate = std::max(
        worst_rate, std::fabs(g.rate_bits - ideal.rate_bits) / ideal.rate_bits);
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << "max |tau_grid - tau*| = " << worst_tau << " (<= 2e-3), max rate dev = "
    << worst_rate << " (<= 1e-3), " << elapsed << " s (< 10 s)";
  return {worst_tau <= 2e-3 && worst_rate <= 1e-3 && elapsed < 10.0, d.str()};
}

Outcome criterion2_wide_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const GridSpec grid{1e-3, 2};
  double worst_gamma = 0.0;
  double worst_rate = 0.0;
  for (int i = 0; i < 50; ++i) {
    ScenarioParams p = section_v_params();
    p.e_s = {0.0};
    p.eta = 0.3 + 0.7 * unif(rng);
    p.P_R_w = {std::pow(10.0, -4.0 + 3.0 * unif(rng))};
    const double budget = p.eta * p.P_R_w.value * (0.01 + 0.69 * unif(rng));
    const double share = 0.05 + 0.9 * unif(rng);
    p.P_C = {budget * share};
    p.P_D = {budget * (1.0 - share)};
    const WideSolveResult ideal = solve_wide_closed_form(p);
    const WideSolveResult g = solve_wide_grid(p, grid);
    if (!ideal.feasible || !g.feasible) {
      return {false, "scenario " + std::to_string(i) + " unexpectedly infeasible"};
    }
    worst_gamma =
        std::max(worst_gamma, std::fabs(g.schedule.gamma - ideal.schedule.gamma));
    worst_rate = std::max(
        worst_rate, std::fabs(g.rate_bits - ideal.rate_bits) / ideal.rate_bits);
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << "max |gamma_grid - gamma*| = " << worst_gamma
    << " (<= 2e-3), max rate dev = " << worst_rate << " (<= 1e-3), " << elapsed
    << " s (< 10 s)";
  return {worst_gamma <= 2e-3 && worst_rate <= 1e-3 && elapsed < 10.0, d.str()};
}

bool tuple_matches(double a, double b, double want_a, double want_b) {
  return std::fabs(a - want_a) < 1e-9 && std::fabs(b - want_b) < 1e-9;
}

Outcome criterion3_table1_structure() {
  const GridSpec grid{0.01, 0};

  // documented sweep for a narrow calibration returning (0.11, 0.11, 0.78)
  std::vector<double> narrow_sweep;
  for (int i = 0; i <= 300; ++i) {
    narrow_sweep.push_back(std::pow(10.0, -6.0 + 5.0 * i / 300.0));
  }
  for (int i = 0; i <= 40; ++i) {
    narrow_sweep.push_back(2.8e-5 + 1e-8 * i * 10.0);
  }
  narrow_sweep.push_back(5.1117e-4);  // margin binds at (0.11, 0.11, 0.78) here
  narrow_sweep.push_back(5.3523e-4);

  bool narrow_hit = false;
  double nearest = 1e9;
  std::string nearest_desc = "none";
  for (double pr : narrow_sweep) {
    ScenarioParams p = section_v_params();
    p.P_R = {pr};
    const NarrowSolveResult r =
        solve_narrow_grid(p, grid, ConstraintVariant::SingleSensing);
    if (!r.feasible) continue;
    if (tuple_matches(r.schedule.kappa, r.schedule.mu, 0.11, 0.11) &&
        std::fabs(r.schedule.tau - 0.78) < 1e-9) {
      narrow_hit = true;
      break;
    }
    const double dist = std::fabs(r.schedule.kappa - 0.11) +
                        std::fabs(r.schedule.mu - 0.11) +
                        std::fabs(r.schedule.tau - 0.78);
    if (dist < nearest) {
      nearest = dist;
      std::ostringstream s;
      s << "(" << r.schedule.kappa << ", " << r.schedule.mu << ", "
        << r.schedule.tau << ") at P_R = " << pr;
      nearest_desc = s.str();
    }
  }

  // documented sweep for a wide calibration returning (0.11, 0.11)
  std::vector<double> wide_sweep;
  for (int i = 0; i <= 300; ++i) {
    wide_sweep.push_back(std::pow(10.0, -6.0 + 6.0 * i / 300.0));
  }
  wide_sweep.push_back(0.0225382);  // margin binds at (0.11, 0.11) here
  bool wide_hit = false;
  for (double prw : wide_sweep) {
    ScenarioParams p = section_v_params();
    p.P_R_w = {prw};
    const WideSolveResult r = solve_wide_grid(p, grid);
    if (r.feasible && tuple_matches(r.schedule.alpha, r.schedule.gamma, 0.11, 0.11)) {
      wide_hit = true;
      break;
    }
  }

  // rate-ratio clauses at the shipped calibration
  ScenarioParams on = calibrated_params();
  ScenarioParams off = calibrated_params();
  off.eta = 0.5;
  off.beta = 0.5;
  const NarrowSolveResult ns =
      solve_narrow_grid(on, grid, ConstraintVariant::SingleSensing);
  const NarrowSolveResult np = solve_narrow_no_sensing_grid(off, grid);
  const WideSolveResult ws = solve_wide_grid(on, grid);
  const WideSolveResult wp = solve_wide_no_sensing_grid(off, grid);
  const double narrow_ratio = ns.rate_bits / np.rate_bits;
  const double wide_ratio = ws.rate_bits / wp.rate_bits;
  const double narrow_target = 395.0 / 224.0;
  const double wide_target = 3864.0 / 2694.0;
  const bool narrow_ratio_ok =
      std::fabs(narrow_ratio - narrow_target) <= 0.1 * narrow_target;
  const bool wide_ratio_ok = std::fabs(wide_ratio - wide_target) <= 0.1 * wide_target;

  std::ostringstream d;
  d << "narrow tuple (0.11,0.11,0.78): " << (narrow_hit ? "found" : "NOT FOUND")
    << " in " << narrow_sweep.size() << " swept P_R (nearest " << nearest_desc
    << "); wide tuple (0.11,0.11): " << (wide_hit ? "found" : "NOT FOUND") << " in "
    << wide_sweep.size() << " swept P_R_w; rate ratios: narrow " << narrow_ratio
    << " vs 395/224 = " << narrow_target << " ("
    << (narrow_ratio_ok ? "within" : "OUTSIDE") << " 10%), wide " << wide_ratio
    << " vs 3864/2694 = " << wide_target << " ("
    << (wide_ratio_ok ? "within" : "OUTSIDE") << " 10%)";
  return {narrow_hit && wide_hit && narrow_ratio_ok && wide_ratio_ok, d.str()};
}

Outcome criterion4_monte_carlo_oracle() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double m : {0.5, 1.0, 2.0, 4.0}) {
    const FadingParams f = avg_shadow_fading(m);
    for (int i = 0; i < 20; ++i) {
      const double gth = 0.05 + (5.0 - 0.05) * i / 19.0;
      const double q = outage_probability(gth, f);
      const double mc = outage_monte_carlo(gth, f, 1000000, 777);
      worst = std::max(worst, std::fabs(q - mc));
    }
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream d;
  d << "max |quad - mc| = " << worst << " (<= 5e-3) over 4x20 grid, " << elapsed
    << " s (< 60 s)";
  return {worst <= 5e-3 && elapsed < 60.0, d.str()};
}

Outcome criterion5_degenerate_closed_form() {
  const FadingParams f{1.0, 0.0, 1e-6, 0.7};
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double gth = 10.0 * i / 40.0;
    const double expected = 1.0 - std::exp(-gth);
    worst = std::max(worst, std::fabs(outage_probability(gth, f) - expected));
  }
  std::ostringstream d;
  d << "max |pout - (1 - e^-gth)| = " << worst << " (<= 1e-4) on [0, 10]";
  return {worst <= 1e-4, d.str()};
}

// integral of the composite density over gamma, via the log substitution
double pdf_mass(const FadingParams& f) {
  constexpr double kXi = 4.3429448190325176;
  const double u0 = f.mu_db / kXi;
  const double s = f.sigma_db / kXi;
  const double omega_min = std::exp(u0 - 10.0 * s);
  const double omega_max = std::exp(u0 + 10.0 * s);
  const double gamma_lo =
      omega_min / f.m *
      std::pow(1e-9 * std::tgamma(f.m + 1.0), 1.0 / f.m);
  const double gamma_hi = omega_max * (60.0 / f.m + 60.0);
  const auto integrand = [&](double v) {
    const double g = std::exp(v);
    return composite_pdf(g, f, {1e-9, 1e-13, 400}) * g;
  };
  return integrate_adaptive(integrand, std::log(gamma_lo), std::log(gamma_hi),
                            {1e-8, 1e-12, 2000})
      .value;
}

Outcome criterion6_pdf_normalization() {
  const double mus[] = {-0.115, 0.0, -1.0};
  const double sigmas[] = {0.161, 4.0, 8.0};
  double worst = 0.0;
  for (double m : {0.5, 1.0, 2.0, 4.0}) {
    for (int j = 0; j < 3; ++j) {
      FadingParams f{m, mus[j], sigmas[j], 0.7};
      worst = std::max(worst, std::fabs(pdf_mass(f) - 1.0));
    }
  }
  std::ostringstream d;
  d << "max |integral - 1| = " << worst << " (<= 1e-6) over 12 fading laws";
  return {worst <= 1e-6, d.str()};
}

Outcome criterion7_monotonicity_suite() {
  std::vector<std::string> failures;
  const ScenarioParams p = calibrated_params();

  // R_n strictly increasing in tau
  {
    double prev = -1.0;
    for (int i = 1; i <= 21; ++i) {
      const double tau = 0.04 * i;
      const NarrowSchedule s{tau, 0.01, 1.0 - tau - 0.01,
                             ConstraintVariant::SingleSensing};
      const double r = rate_narrow(s, p);
      if (r <= prev) failures.push_back("R_n not increasing in tau");
      prev = r;
    }
  }
  // R_w strictly decreasing in alpha and gamma
  {
    double prev = 1e300;
    for (int i = 0; i <= 20; ++i) {
      const double r = rate_wide({0.045 * i, 0.3}, p);
      if (r >= prev) failures.push_back("R_w not decreasing in alpha");
      prev = r;
    }
    prev = 1e300;
    for (int i = 0; i <= 20; ++i) {
      const double r = rate_wide({0.3, 0.045 * i}, p);
      if (r >= prev) failures.push_back("R_w not decreasing in gamma");
      prev = r;
    }
  }
  // P_out non-decreasing in gamma_th
  {
    double prev = -1.0;
    for (int i = 0; i <= 20; ++i) {
      const double v = outage_probability(0.25 * i, avg_shadow_fading(1.0));
      if (v < prev) failures.push_back("P_out decreasing in gamma_th");
      prev = v;
    }
  }
  // P_out non-increasing in m below the shadowed mean
  for (int i = 0; i < 20; ++i) {
    const double gth = 0.02 + (0.8 - 0.02) * i / 19.0;
    double prev = 2.0;
    for (double m : {0.5, 1.0, 2.0, 4.0}) {
      const double v = outage_probability(gth, avg_shadow_fading(m));
      if (v > prev) failures.push_back("P_out increasing in m");
      prev = v;
    }
  }
  // required transmit power increasing in d at fixed target outage
  {
    const PowerWatts p_th = invert_threshold(0.1, avg_shadow_fading(1.0), {1e-7});
    double prev = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double p_t =
          transmit_power_threshold(p_th, {1.0, 2.0, 10.0 * i}).value;
      if (p_t <= prev) failures.push_back("P_t not increasing in d");
      prev = p_t;
    }
  }

  if (failures.empty()) {
    return {true, "R_n(tau), R_w(alpha), R_w(gamma), P_out(gamma_th), P_out(m), "
                  "P_t(d) all monotone on >= 20-point grids"};
  }
  std::string what = failures.front();
  return {false, what + " (" + std::to_string(failures.size()) + " violations)"};
}

Outcome criterion8_time_linearity_and_ordering() {
  const GridSpec grid{0.01, 0};
  std::vector<std::string> failures;

  struct Rates {
    double ns, np, wc, wp;
  };
  const auto rates_at = [&](double T) {
    ScenarioParams on = calibrated_params();
    ScenarioParams off = calibrated_params();
    on.T = T;
    off.T = T;
    off.eta = 0.5;
    off.beta = 0.5;
    Rates r;
    r.ns = solve_narrow_grid(on, grid, ConstraintVariant::SingleSensing).rate_bits;
    r.np = solve_narrow_no_sensing_grid(off, grid).rate_bits;
    r.wc = solve_wide_grid(on, grid).rate_bits;
    r.wp = solve_wide_no_sensing_grid(off, grid).rate_bits;
    return r;
  };

  for (double T : {5.0, 10.0, 20.0}) {
    const Rates a = rates_at(T);
    const Rates b = rates_at(2.0 * T);
    if (b.ns != 2.0 * a.ns || b.np != 2.0 * a.np || b.wc != 2.0 * a.wc ||
        b.wp != 2.0 * a.wp) {
      failures.push_back("rate(2T) != 2 rate(T) exactly");
    }
    if (b.ns - b.np != 2.0 * (a.ns - a.np) || b.wc - b.wp != 2.0 * (a.wc - a.wp)) {
      failures.push_back("sensing gap does not double with T");
    }
  }
  const Rates r10 = rates_at(10.0);
  if (!(r10.wc > r10.wp && r10.wp > r10.ns && r10.ns > r10.np)) {
    failures.push_back("ordering wide-CS > wide > narrow-sensing > narrow broken");
  }

  if (failures.empty()) {
    std::ostringstream d;
    d << "rate(2T) = 2 rate(T) exactly for all four modes; gaps double; ordering "
      << r10.wc << " > " << r10.wp << " > " << r10.ns << " > " << r10.np;
    return {true, d.str()};
  }
  return {false, failures.front()};
}

Outcome criterion9_threshold_round_trip() {
  double worst = 0.0;
  for (double m : {0.5, 1.0, 2.0, 4.0}) {
    const FadingParams f = avg_shadow_fading(m);
    for (double target : {0.01, 0.1, 0.5, 0.9}) {
      const PowerWatts p = invert_threshold(target, f, {1e-7});
      const double back = outage_vs_received_power(p, f, {1e-7});
      worst = std::max(worst, std::fabs(back - target));
    }
  }
  std::ostringstream d;
  d << "max |outage(invert(p)) - p| = " << worst << " (<= 1e-6) over 4x4 grid";
  return {worst <= 1e-6, d.str()};
}

int run_cli(const std::string& args, const std::filesystem::path& out_csv,
            const std::filesystem::path& dir) {
  const std::string cmd = std::string(ABCOM_CLI_PATH) + " " + args + " --out " +
                          out_csv.string() + " 2>" + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome criterion10_cli_determinism() {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("abcom_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "accept.scenario");
    f << "[channel]\nd_up = 100\nB_w = 100\n"
      << "[sources]\npower_dbm = -15.228787452803376\npower_wide_dbm = 0\n"
      << "[solver]\nconstraint_variant = single\n";
    std::ofstream b(dir / "accept_bank.csv");
    b << "frequency_hz,power_dbm\n470e6,-30\n478e6,-25\n486e6,-90\n494e6,-22\n";
    std::ofstream s(dir / "accept_bank.scenario");
    s << "[sources]\nbank = accept_bank.csv\nlambda_h_dbm = -40\n";
  }
  const std::string scen = " --scenario " + (dir / "accept.scenario").string();

  const struct {
    std::string name;
    std::string args;
  } runs[] = {
      {"outage-curve",
       "outage-curve --from 0 --to 3 --points 9 --m 0.5,1,2 --mc-samples 50000 "
       "--seed 2718" + scen},
      {"optimize-narrow", "optimize-narrow" + scen},
      {"optimize-wide", "optimize-wide" + scen},
      {"sweep-time", "sweep-time --T 5,10,20" + scen},
      {"threshold", "threshold --target 0.1" + scen},
      {"detect", "detect --scenario " + (dir / "accept_bank.scenario").string()},
  };
  for (const auto& r : runs) {
    const int e1 = run_cli(r.args, dir / (r.name + "_1.csv"), dir);
    const int e2 = run_cli(r.args, dir / (r.name + "_2.csv"), dir);
    if (e1 != 0 || e2 != 0) {
      return {false, r.name + " exited with " + std::to_string(e1) + "/" +
                         std::to_string(e2)};
    }
    const std::string a = read_file(dir / (r.name + "_1.csv"));
    const std::string b = read_file(dir / (r.name + "_2.csv"));
    if (a.empty() || a != b) {
      return {false, r.name + " runs differ or are empty"};
    }
  }
  return {true, "six commands re-run byte-identically with fixed seeds"};
}

}  // namespace

int main() {
  const struct {
    int id;
    const char* name;
    Outcome (*fn)();
  } criteria[] = {
      {1, "closed form vs grid oracle, per-frequency scheme", criterion1_narrow_oracle},
      {2, "closed form vs grid oracle, wideband scheme", criterion2_wide_oracle},
      {3, "reference operating-point reproduction (tuples + rate ratios)",
       criterion3_table1_structure},
      {4, "outage quadrature vs 1e6-sample Monte-Carlo", criterion4_monte_carlo_oracle},
      {5, "degenerate shadowing matches 1 - e^-gth", criterion5_degenerate_closed_form},
      {6, "composite pdf normalization", criterion6_pdf_normalization},
      {7, "monotonicity suite", criterion7_monotonicity_suite},
      {8, "linearity in T and mode ordering", criterion8_time_linearity_and_ordering},
      {9, "threshold inversion round trip", criterion9_threshold_round_trip},
      {10, "CLI determinism", criterion10_cli_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "CRITERION " << c.id << (o.pass ? " [PASS] " : " [FAIL] ")
              << c.name << " -- " << o.detail << "\n";
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}

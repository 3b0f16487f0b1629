#pragma once

#include <vector>

#include "abcom/power_model.hpp"

namespace abcom {

/// Bits per block contributed by a unit backscatter fraction of the
/// per-frequency scheme: T * B_w * log2(1 + beta * P_R * L(d_up) / N).
/// rate_narrow is exactly tau times this.
double narrow_rate_scale(const ScenarioParams& p);

/// Backscatter transmission rate of the per-frequency scheme, bits per block.
double rate_narrow(const NarrowSchedule& s, const ScenarioParams& p);

/// Backscatter transmission rate of the wideband power-split scheme,
/// (1-alpha) * T * B_w * log2(1 + beta * (1-gamma) * P_R_w * L(d_up) / N),
/// bits per block.
double rate_wide(const WideSchedule& s, const ScenarioParams& p);

/// One transmitting node among K-1 equal-power interferers.
struct InterferenceScene {
  PowerWatts P_l;         // common node transmit power
  double h = 0.0;         // direct channel gain
  std::vector<double> g;  // interferer channel gains, length K-1
  PowerWatts N;           // receiver noise
  double B_w = 1.0;       // bandwidth, Hz
};

/// Interference-limited rate B_w * log2(1 + P_l h / (N + P_l * sum g)), bits/s.
double rate_interference(const InterferenceScene& sc);

}  // namespace abcom

#pragma once

namespace abcom {

/// Power expressed in dBm. Only used at configuration and CLI boundaries;
/// everything internal runs in linear watts.
struct PowerDbm {
  double value = 0.0;
};

/// Non-negative finite power in watts.
struct PowerWatts {
  double value = 0.0;
};

PowerWatts to_watts(PowerDbm p);
PowerDbm to_dbm(PowerWatts p);

/// Power-law path loss L(d) = B_pl * d^-varsigma. Multiplying a transmit
/// power by L(d) yields the received power.
struct PathLossParams {
  double B_pl = 1.0;      // frequency-dependent constant, > 0
  double varsigma = 2.0;  // path-loss exponent, >= 2
  double d = 1.0;         // distance in meters, > 0
};

void validate(const PathLossParams& p);
double path_loss(const PathLossParams& p);

/// Maps a received power to an instantaneous SNR, gamma = alpha^2 * P / N.
/// The same mapping carries a power threshold P_th to an SNR threshold.
struct SnrMapping {
  double alpha_fade = 1.0;  // fading amplitude, > 0
  PowerWatts noise;         // > 0
};

double snr_of_power(PowerWatts p, const SnrMapping& m);

}  // namespace abcom

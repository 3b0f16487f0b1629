#include "abcom/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace abcom {

PowerWatts to_watts(PowerDbm p) {
  if (!std::isfinite(p.value)) {
    throw std::domain_error("dBm value must be finite");
  }
  return {std::pow(10.0, p.value / 10.0) * 1e-3};
}

PowerDbm to_dbm(PowerWatts p) {
  if (!std::isfinite(p.value) || p.value <= 0.0) {
    throw std::domain_error("watts must be positive and finite for dBm conversion");
  }
  return {10.0 * std::log10(p.value * 1e3)};
}

void validate(const PathLossParams& p) {
  if (!(p.d > 0.0) || !std::isfinite(p.d)) {
    throw std::domain_error("path-loss distance must be > 0");
  }
  if (!(p.B_pl > 0.0) || !std::isfinite(p.B_pl)) {
    throw std::domain_error("path-loss constant B_pl must be > 0");
  }
  if (!(p.varsigma >= 2.0) || !std::isfinite(p.varsigma)) {
    throw std::domain_error("path-loss exponent must be >= 2");
  }
}

double path_loss(const PathLossParams& p) {
  validate(p);
  return p.B_pl * std::pow(p.d, -p.varsigma);
}

double snr_of_power(PowerWatts p, const SnrMapping& m) {
  if (!(m.noise.value > 0.0)) {
    throw std::domain_error("noise power must be > 0");
  }
  if (!(m.alpha_fade > 0.0)) {
    throw std::domain_error("fading amplitude must be > 0");
  }
  if (!std::isfinite(p.value) || p.value < 0.0) {
    throw std::domain_error("power must be non-negative and finite");
  }
  return m.alpha_fade * m.alpha_fade * p.value / m.noise.value;
}

}  // namespace abcom

#include "abcom/rate.hpp"

#include <cmath>
#include <stdexcept>

namespace abcom {

namespace {

void require_noise(const ScenarioParams& p) {
  if (!(p.noise_rx.value > 0.0)) {
    throw std::domain_error("receiver noise must be > 0 to evaluate a rate");
  }
}

}  // namespace

double narrow_rate_scale(const ScenarioParams& p) {
  validate(p);
  require_noise(p);
  const double snr = p.beta * p.P_R.value * path_loss(p.pathloss_up) / p.noise_rx.value;
  return p.T * p.B_w * std::log2(1.0 + snr);
}

double rate_narrow(const NarrowSchedule& s, const ScenarioParams& p) {
  validate(s);
  return s.tau * narrow_rate_scale(p);
}

double rate_wide(const WideSchedule& s, const ScenarioParams& p) {
  validate(s);
  validate(p);
  require_noise(p);
  const double snr = p.beta * (1.0 - s.gamma) * p.P_R_w.value *
                     path_loss(p.pathloss_up) / p.noise_rx.value;
  return (1.0 - s.alpha) * p.T * p.B_w * std::log2(1.0 + snr);
}

double rate_interference(const InterferenceScene& sc) {
  if (!(sc.N.value > 0.0)) {
    throw std::domain_error("receiver noise must be > 0");
  }
  if (!(sc.h >= 0.0) || !(sc.P_l.value >= 0.0) || !(sc.B_w >= 0.0)) {
    throw std::invalid_argument("interference scene requires non-negative gains and powers");
  }
  double interference = 0.0;
  for (double gk : sc.g) {
    if (!(gk >= 0.0)) {
      throw std::invalid_argument("interferer channel gains must be non-negative");
    }
    interference += sc.P_l.value * gk;
  }
  return sc.B_w * std::log2(1.0 + sc.P_l.value * sc.h / (sc.N.value + interference));
}

}  // namespace abcom

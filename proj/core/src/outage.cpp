#include "abcom/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace abcom {

namespace {

// 10/ln(10): converts between dB parameters and natural-log parameters of
// the shadowing law. 10*log10(Omega) ~ N(mu_db, sigma_db^2) is equivalent to
// ln(Omega) ~ N(mu_db/kXi, (sigma_db/kXi)^2).
constexpr double kXi = 4.3429448190325176;
constexpr double kSqrt2Pi = 2.5066282746310005;
constexpr double kTailSigmas = 10.0;

struct ShadowLaw {
  double u0;  // mean of ln(Omega)
  double s;   // std of ln(Omega)
};

ShadowLaw natural_law(const FadingParams& f) {
  return {f.mu_db / kXi, f.sigma_db / kXi};
}

double gauss_pdf(double u, const ShadowLaw& law) {
  const double z = (u - law.u0) / law.s;
  return std::exp(-0.5 * z * z) / (law.s * kSqrt2Pi);
}

}  // namespace

void validate(const FadingParams& f) {
  if (!(f.m > 0.0) || !std::isfinite(f.m)) {
    throw std::invalid_argument("Nakagami order m must be > 0");
  }
  if (!(f.sigma_db > 0.0) || !std::isfinite(f.sigma_db)) {
    throw std::invalid_argument("shadowing sigma must be > 0");
  }
  if (!std::isfinite(f.mu_db)) {
    throw std::invalid_argument("shadowing mu must be finite");
  }
  if (!(f.alpha_fade > 0.0) || !std::isfinite(f.alpha_fade)) {
    throw std::invalid_argument("fading amplitude must be > 0");
  }
}

double composite_pdf(double gamma, const FadingParams& f, const QuadratureSpec& q) {
  validate(f);
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::domain_error("composite_pdf requires gamma >= 0");
  }
  const ShadowLaw law = natural_law(f);
  if (gamma == 0.0) {
    if (f.m < 1.0) return std::numeric_limits<double>::infinity();
    if (f.m > 1.0) return 0.0;
    // m == 1: density at zero is E[1/Omega] over the shadowing law
    const auto fn = [&](double u) { return std::exp(-u) * gauss_pdf(u, law); };
    return integrate_adaptive(fn, law.u0 - kTailSigmas * law.s,
                              law.u0 + kTailSigmas * law.s, q)
        .value;
  }
  // Nakagami power density against Omega = e^u, evaluated in log form:
  // exp(m ln m + (m-1) ln gamma - m gamma e^-u - m u - lgamma(m)) * phi(u)
  const double log_const =
      f.m * std::log(f.m) + (f.m - 1.0) * std::log(gamma) - std::lgamma(f.m);
  const auto fn = [&](double u) {
    return std::exp(log_const - f.m * gamma * std::exp(-u) - f.m * u) *
           gauss_pdf(u, law);
  };
  return integrate_adaptive(fn, law.u0 - kTailSigmas * law.s,
                            law.u0 + kTailSigmas * law.s, q)
      .value;
}

OutageResult outage_probability_full(double gamma_th, const FadingParams& f,
                                     const QuadratureSpec& q) {
  validate(f);
  if (!(gamma_th >= 0.0) || !std::isfinite(gamma_th)) {
    throw std::domain_error("outage requires a finite gamma_th >= 0");
  }
  if (gamma_th == 0.0) return {0.0, 0.0, 0};

  const ShadowLaw law = natural_law(f);
  const auto fn = [&](double u) {
    return regularized_lower_gamma(f.m, f.m * gamma_th * std::exp(-u)) *
           gauss_pdf(u, law);
  };
  const QuadratureResult r = integrate_adaptive(
      fn, law.u0 - kTailSigmas * law.s, law.u0 + kTailSigmas * law.s, q);

  double pout = r.value;
  const double slack = std::max(1e-7, 10.0 * (r.error_estimate + q.rel_tol));
  if (pout < 0.0 || pout > 1.0) {
    if (pout < -slack || pout > 1.0 + slack) {
      std::ostringstream msg;
      msg << "outage quadrature left [0,1] beyond its error bound: pout=" << pout
          << " error=" << r.error_estimate;
      throw NumericalError(msg.str());
    }
    pout = std::clamp(pout, 0.0, 1.0);
  }
  return {pout, r.error_estimate, r.intervals};
}

double outage_probability(double gamma_th, const FadingParams& f,
                          const QuadratureSpec& q) {
  return outage_probability_full(gamma_th, f, q).pout;
}

double outage_monte_carlo(double gamma_th, const FadingParams& f,
                          std::int64_t n_samples, std::uint64_t seed) {
  validate(f);
  if (n_samples < 1) {
    throw std::invalid_argument("outage_monte_carlo requires n_samples >= 1");
  }
  if (!(gamma_th >= 0.0) || !std::isfinite(gamma_th)) {
    throw std::domain_error("outage requires a finite gamma_th >= 0");
  }
  if (gamma_th == 0.0) return 0.0;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  std::gamma_distribution<double> gamma_draw;
  using GammaParam = std::gamma_distribution<double>::param_type;

  std::int64_t below = 0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double db = f.mu_db + f.sigma_db * unit_normal(rng);
    const double omega = std::pow(10.0, db / 10.0);
    const double snr = gamma_draw(rng, GammaParam(f.m, omega / f.m));
    if (snr < gamma_th) ++below;
  }
  return static_cast<double>(below) / static_cast<double>(n_samples);
}

double outage_vs_received_power(PowerWatts p_th, const FadingParams& f,
                                PowerWatts noise, const QuadratureSpec& q) {
  validate(f);
  const double gamma_th = snr_of_power(p_th, {f.alpha_fade, noise});
  return outage_probability(gamma_th, f, q);
}

PowerWatts invert_threshold(double target_pout, const FadingParams& f,
                            PowerWatts noise, const QuadratureSpec& q) {
  validate(f);
  if (!(target_pout > 0.0) || !(target_pout < 1.0)) {
    throw std::invalid_argument("target outage must lie in (0, 1)");
  }
  if (!(noise.value > 0.0)) {
    throw std::domain_error("noise power must be > 0");
  }
  const double tol = 10.0 * q.rel_tol;
  const auto pout_at = [&](double p_watts) {
    return outage_vs_received_power({p_watts}, f, noise, q);
  };

  // bracket: gamma_th = 1 as the seed, then power-of-two expansion
  double lo = 0.0;
  double hi = noise.value / (f.alpha_fade * f.alpha_fade);
  double pout_hi = pout_at(hi);
  int expansions = 0;
  while (pout_hi < target_pout) {
    if (++expansions > 200) {
      throw NumericalError("invert_threshold bracket expansion failed");
    }
    hi *= 2.0;
    pout_hi = pout_at(hi);
  }
  if (std::fabs(pout_hi - target_pout) <= tol) return {hi};

  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double pm = pout_at(mid);
    if (std::fabs(pm - target_pout) <= tol) return {mid};
    if (pm < target_pout) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= hi * 1e-15) break;
  }
  throw NumericalError("invert_threshold bisection did not reach its tolerance");
}

PowerWatts transmit_power_threshold(PowerWatts p_th, const PathLossParams& pl) {
  if (!std::isfinite(p_th.value) || p_th.value < 0.0) {
    throw std::domain_error("power threshold must be non-negative and finite");
  }
  return {p_th.value / path_loss(pl)};
}

}  // namespace abcom

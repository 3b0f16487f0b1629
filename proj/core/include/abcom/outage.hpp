#pragma once

#include <cstdint>

#include "abcom/channel.hpp"
#include "abcom/numerics.hpp"

namespace abcom {

/// Composite channel: Nakagami-m small-scale fading whose mean power Omega is
/// log-normally shadowed, with 10*log10(Omega) ~ Normal(mu_db, sigma_db^2).
struct FadingParams {
  double m = 1.0;           // Nakagami order, > 0 (m = 1 is Rayleigh)
  double mu_db = -0.115;    // mean of 10*log10(Omega), dB
  double sigma_db = 0.161;  // std of 10*log10(Omega), dB, > 0
  double alpha_fade = 0.7;  // fading amplitude entering the SNR mapping
};

void validate(const FadingParams& f);

/// Outage value together with the quadrature diagnostics that produced it.
struct OutageResult {
  double pout = 0.0;
  double quad_error = 0.0;
  int quad_intervals = 0;
};

/// Density of the instantaneous SNR under the composite law. The shadowing
/// integral runs over u = ln(Omega), truncated at +-10 natural sigmas.
double composite_pdf(double gamma, const FadingParams& f, const QuadratureSpec& q = {});

/// P(SNR < gamma_th). The inner Nakagami integral is the regularized lower
/// incomplete gamma function P(m, m*gamma_th/Omega); only the shadowing
/// dimension is integrated numerically.
OutageResult outage_probability_full(double gamma_th, const FadingParams& f,
                                     const QuadratureSpec& q = {});
double outage_probability(double gamma_th, const FadingParams& f,
                          const QuadratureSpec& q = {});

/// Empirical outage over n_samples draws of (Omega, SNR). Independent of the
/// quadrature path; deterministic per seed.
double outage_monte_carlo(double gamma_th, const FadingParams& f,
                          std::int64_t n_samples, std::uint64_t seed);

/// Outage at the SNR threshold implied by a received-power threshold,
/// gamma_th = alpha^2 * P_th / N.
double outage_vs_received_power(PowerWatts p_th, const FadingParams& f,
                                PowerWatts noise, const QuadratureSpec& q = {});

/// Smallest received-power threshold whose outage reaches target_pout;
/// bisection over the monotone map above. This is the lower bound of the
/// backscatter detection threshold lambda_b.
PowerWatts invert_threshold(double target_pout, const FadingParams& f,
                            PowerWatts noise, const QuadratureSpec& q = {});

/// Minimum transmit power that keeps the received power at or above p_th
/// across the given link, p_th / L(d).
PowerWatts transmit_power_threshold(PowerWatts p_th, const PathLossParams& pl);

}  // namespace abcom

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "abcom/channel.hpp"

namespace abcom {

/// Discrete amplitude samples y[n] of one detection window.
struct SampleStream {
  std::vector<double> samples;
};

/// Sample-average received power, (1/N_s) * sum |y[n]|^2.
PowerWatts received_power(const SampleStream& s);

/// Synthetic realization of a carrier-plus-noise stream. Deterministic per
/// seed; the expected received power is signal_power + noise_power.
SampleStream generate_stream(PowerWatts signal_power, PowerWatts noise_power,
                             int n_samples, std::uint64_t seed);

/// Per-channel powers seen by the wideband detector.
struct ChannelBank {
  std::vector<double> frequency_hz;
  std::vector<PowerWatts> per_channel_power;
  double sparsity = 0.75;  // fraction of truly occupied channels
};

void validate(const ChannelBank& bank);

struct DetectionOutcome {
  std::vector<std::size_t> harvest_set;      // power >= lambda_h
  std::vector<std::size_t> backscatter_set;  // power >= lambda_b
  PowerWatts aggregate_power;                // sum over the harvest set
};

/// Inclusive threshold comparison on each channel. The aggregate feeds the
/// wideband scheme's received power P_R_w.
DetectionOutcome detect(const ChannelBank& bank, PowerWatts lambda_h, PowerWatts lambda_b);

/// Loads a bank from a CSV file with header "frequency_hz,power_dbm".
ChannelBank load_channel_bank(const std::filesystem::path& path);

}  // namespace abcom

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "abcom/outage.hpp"
#include "abcom/power_model.hpp"
#include "abcom/scheduler.hpp"
#include "abcom/sensing.hpp"

namespace abcom {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// One fully resolved deployment: physics, fading, solver settings, and the
/// optional detected channel bank.
struct Scenario {
  ScenarioParams params;
  FadingParams fading;
  GridSpec grid;
  ConstraintVariant variant = ConstraintVariant::DoubleSensing;
  std::optional<ChannelBank> bank;
  PowerWatts lambda_h;  // harvesting detection threshold applied to banks

  SnrMapping snr_mapping() const { return {fading.alpha_fade, params.noise_rx}; }
};

/// Parses the INI-style scenario format ([node], [channel], [sources],
/// [fading], [solver] sections). Unknown sections or keys are errors; omitted
/// keys take the documented defaults. base_dir anchors relative bank paths.
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir);

Scenario load_scenario(const std::filesystem::path& path);

}  // namespace abcom

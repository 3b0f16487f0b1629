#include "abcom/sensing.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace abcom {

namespace {

// Carrier frequency in cycles per sample; incommensurate with typical sample
// counts so the squared-carrier average settles at 1 quickly.
constexpr double kCarrierCyclesPerSample = 0.1234567891;
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::filesystem::path& path, int line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty()) {
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": expected a number, got '" << text << "'";
    throw std::runtime_error(msg.str());
  }
  return v;
}

}  // namespace

PowerWatts received_power(const SampleStream& s) {
  if (s.samples.empty()) {
    throw std::invalid_argument("received_power requires a non-empty sample stream");
  }
  double acc = 0.0;
  for (double y : s.samples) acc += y * y;
  return {acc / static_cast<double>(s.samples.size())};
}

SampleStream generate_stream(PowerWatts signal_power, PowerWatts noise_power,
                             int n_samples, std::uint64_t seed) {
  if (n_samples < 1) {
    throw std::invalid_argument("generate_stream requires n_samples >= 1");
  }
  if (signal_power.value < 0.0 || noise_power.value < 0.0 ||
      !std::isfinite(signal_power.value) || !std::isfinite(noise_power.value)) {
    throw std::invalid_argument("stream powers must be non-negative and finite");
  }
  const double amp = std::sqrt(2.0 * signal_power.value);
  const double sigma = std::sqrt(noise_power.value);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  SampleStream out;
  out.samples.resize(static_cast<std::size_t>(n_samples));
  for (int n = 0; n < n_samples; ++n) {
    const double carrier = std::cos(kTwoPi * kCarrierCyclesPerSample * n);
    double y = amp * carrier;
    if (sigma > 0.0) y += sigma * noise(rng);
    out.samples[static_cast<std::size_t>(n)] = y;
  }
  return out;
}

void validate(const ChannelBank& bank) {
  if (bank.frequency_hz.size() != bank.per_channel_power.size()) {
    throw std::invalid_argument("channel bank frequency and power lists must match in length");
  }
  if (!(bank.sparsity >= 0.0) || bank.sparsity > 1.0) {
    throw std::invalid_argument("channel bank sparsity must lie in [0, 1]");
  }
  for (const PowerWatts& p : bank.per_channel_power) {
    if (!std::isfinite(p.value) || p.value < 0.0) {
      throw std::invalid_argument("channel powers must be non-negative and finite");
    }
  }
}

DetectionOutcome detect(const ChannelBank& bank, PowerWatts lambda_h, PowerWatts lambda_b) {
  validate(bank);
  if (lambda_h.value < 0.0 || lambda_b.value < 0.0) {
    throw std::invalid_argument("detection thresholds must be non-negative");
  }
  DetectionOutcome out;
  double aggregate = 0.0;
  for (std::size_t i = 0; i < bank.per_channel_power.size(); ++i) {
    const double power = bank.per_channel_power[i].value;
    if (power >= lambda_h.value) {
      out.harvest_set.push_back(i);
      aggregate += power;
    }
    if (power >= lambda_b.value) {
      out.backscatter_set.push_back(i);
    }
  }
  out.aggregate_power = {aggregate};
  return out;
}

ChannelBank load_channel_bank(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open channel bank file: " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("channel bank file is empty: " + path.string());
  }
  if (trim(line) != "frequency_hz,power_dbm") {
    throw std::runtime_error("channel bank header must be 'frequency_hz,power_dbm': " +
                             path.string());
  }
  ChannelBank bank;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) {
      std::ostringstream msg;
      msg << path.string() << ":" << lineno << ": expected 'frequency_hz,power_dbm' record";
      throw std::runtime_error(msg.str());
    }
    const double freq = parse_number(trim(row.substr(0, comma)), path, lineno);
    const double dbm = parse_number(trim(row.substr(comma + 1)), path, lineno);
    bank.frequency_hz.push_back(freq);
    bank.per_channel_power.push_back(to_watts({dbm}));
  }
  validate(bank);
  return bank;
}

}  // namespace abcom

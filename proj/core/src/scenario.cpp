#include "abcom/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace abcom {

namespace {

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"node", {"T", "eta", "beta", "P_C_dbm", "P_D_dbm", "e_s_dbm", "f_s", "N_s"}},
    {"channel", {"B_pl", "varsigma", "d_up", "d_down", "noise_dbm", "B_w"}},
    {"sources",
     {"power_dbm", "power_wide_dbm", "tower_power_dbm", "bank", "M_w", "sparsity",
      "lambda_h_dbm"}},
    {"fading", {"m", "mu_db", "sigma_db", "alpha_fade", "units"}},
    {"solver", {"resolution", "refine_levels", "constraint_variant"}},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class KeyValues {
 public:
  void insert(const std::string& section, const std::string& key,
              const std::string& value, int line) {
    const auto sec = kKnownKeys.find(section);
    if (sec == kKnownKeys.end()) {
      fail(line, "unknown section [" + section + "]");
    }
    if (!sec->second.count(key)) {
      fail(line, "unknown key '" + key + "' in section [" + section + "]");
    }
    if (!values_.emplace(section + "." + key, value).second) {
      fail(line, "duplicate key '" + key + "' in section [" + section + "]");
    }
  }

  bool has(const std::string& name) const { return values_.count(name) > 0; }

  std::string str(const std::string& name, const std::string& fallback) const {
    const auto it = values_.find(name);
    return it == values_.end() ? fallback : it->second;
  }

  double num(const std::string& name, double fallback) const {
    const auto it = values_.find(name);
    if (it == values_.end()) return fallback;
    return parse_num(name, it->second);
  }

  int integer(const std::string& name, int fallback) const {
    const auto it = values_.find(name);
    if (it == values_.end()) return fallback;
    const double v = parse_num(name, it->second);
    if (v != std::floor(v) || std::fabs(v) > 1e9) {
      throw ConfigError("key '" + name + "' must be an integer, got '" + it->second + "'");
    }
    return static_cast<int>(v);
  }

  static double parse_num(const std::string& name, const std::string& text) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (text.empty() || pos != text.size()) {
      throw ConfigError("key '" + name + "' is not a number: '" + text + "'");
    }
    return v;
  }

  [[noreturn]] static void fail(int line, const std::string& what) {
    std::ostringstream msg;
    msg << "scenario line " << line << ": " << what;
    throw ConfigError(msg.str());
  }

 private:
  std::map<std::string, std::string> values_;
};

KeyValues tokenize(std::string_view text) {
  KeyValues kv;
  std::string section;
  int lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        KeyValues::fail(lineno, "malformed section header '" + line + "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      KeyValues::fail(lineno, "expected 'key = value', got '" + line + "'");
    }
    if (section.empty()) {
      KeyValues::fail(lineno, "key outside of any section");
    }
    kv.insert(section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno);
  }
  return kv;
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  const KeyValues kv = tokenize(text);
  Scenario sc;
  ScenarioParams& p = sc.params;

  p.T = kv.num("node.T", 10.0);
  p.eta = kv.num("node.eta", 1.0);
  p.beta = kv.num("node.beta", 1.0);
  p.P_C = to_watts({kv.num("node.P_C_dbm", -40.0)});
  p.P_D = to_watts({kv.num("node.P_D_dbm", -30.0)});
  p.e_s = to_watts({kv.num("node.e_s_dbm", -33.0)});
  p.f_s = kv.num("node.f_s", 1000.0);
  p.N_s = kv.integer("node.N_s", 1000);

  const double B_pl = kv.num("channel.B_pl", 1.0);
  const double varsigma = kv.num("channel.varsigma", 2.0);
  p.pathloss_up = {B_pl, varsigma, kv.num("channel.d_up", 1.0)};
  p.pathloss_down = {B_pl, varsigma, kv.num("channel.d_down", 1.0)};
  p.noise_rx = to_watts({kv.num("channel.noise_dbm", -40.0)});
  p.B_w = kv.num("channel.B_w", 1.0);

  p.M_w = kv.integer("sources.M_w", 40);
  const double sparsity = kv.num("sources.sparsity", 0.75);
  sc.lambda_h = to_watts({kv.num("sources.lambda_h_dbm", -200.0)});

  std::optional<DetectionOutcome> detected;
  if (kv.has("sources.bank")) {
    std::filesystem::path bank_path = kv.str("sources.bank", "");
    if (bank_path.is_relative()) bank_path = base_dir / bank_path;
    try {
      sc.bank = load_channel_bank(bank_path);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    sc.bank->sparsity = sparsity;
    detected = detect(*sc.bank, sc.lambda_h, sc.lambda_h);
  }

  if (kv.has("sources.power_dbm")) {
    p.P_R = to_watts({kv.num("sources.power_dbm", 0.0)});
  } else if (kv.has("sources.tower_power_dbm")) {
    const PowerWatts tower = to_watts({kv.num("sources.tower_power_dbm", 0.0)});
    p.P_R = {tower.value * path_loss(p.pathloss_down)};
  } else if (detected) {
    double best = 0.0;
    for (std::size_t i : detected->harvest_set) {
      best = std::max(best, sc.bank->per_channel_power[i].value);
    }
    p.P_R = {best};
  } else {
    throw ConfigError(
        "[sources] needs one of power_dbm, tower_power_dbm, or bank to fix the "
        "received power");
  }

  if (kv.has("sources.power_wide_dbm")) {
    p.P_R_w = to_watts({kv.num("sources.power_wide_dbm", 0.0)});
  } else if (detected) {
    p.P_R_w = detected->aggregate_power;
  } else {
    // uniform-bank reading of the aggregate: the occupied fraction of the
    // M_w channels, each at the narrowband power
    p.P_R_w = {p.P_R.value * std::round(p.M_w * sparsity)};
  }

  sc.fading.m = kv.num("fading.m", 1.0);
  sc.fading.alpha_fade = kv.num("fading.alpha_fade", 0.7);
  const std::string units = kv.str("fading.units", "db");
  const double mu_in = kv.num("fading.mu_db", -0.115);
  const double sigma_in = kv.num("fading.sigma_db", 0.161);
  if (units == "db") {
    sc.fading.mu_db = mu_in;
    sc.fading.sigma_db = sigma_in;
  } else if (units == "natural") {
    // interpret the pair as the law of ln(Omega) and convert to dB
    constexpr double kXi = 4.3429448190325176;  // 10/ln 10
    sc.fading.mu_db = mu_in * kXi;
    sc.fading.sigma_db = sigma_in * kXi;
  } else {
    throw ConfigError("fading.units must be 'db' or 'natural', got '" + units + "'");
  }

  sc.grid.resolution = kv.num("solver.resolution", 0.01);
  sc.grid.refine_levels = kv.integer("solver.refine_levels", 0);
  const std::string variant = kv.str("solver.constraint_variant", "double");
  if (variant == "double") {
    sc.variant = ConstraintVariant::DoubleSensing;
  } else if (variant == "single") {
    sc.variant = ConstraintVariant::SingleSensing;
  } else {
    throw ConfigError("solver.constraint_variant must be 'double' or 'single', got '" +
                      variant + "'");
  }

  if (!(sparsity >= 0.0 && sparsity <= 1.0)) {
    throw ConfigError("sources.sparsity must lie in [0, 1]");
  }

  try {
    validate(p);
    validate(sc.fading);
    validate(sc.grid);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid scenario: ") + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open scenario file: " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.parent_path());
}

}  // namespace abcom

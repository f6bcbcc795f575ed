#include "goim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace goim {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("config: invalid JSON");
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  return j;
}

void check_keys(const json& j, const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw std::invalid_argument("config: unknown key \"" + item.key() + "\"");
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

SqueezeVariant squeeze_variant_from_string(const std::string& name) {
  if (name == "canonical") return SqueezeVariant::canonical;
  if (name == "isotropic") return SqueezeVariant::isotropic;
  throw std::invalid_argument("config: squeeze_variant must be \"canonical\" or \"isotropic\"");
}

GainMode gain_mode_from_string(const std::string& name, double gain_r) {
  if (name == "squeeze") return {GainKind::squeeze, 0.0};
  if (name == "none") return {GainKind::none, 0.0};
  if (name == "phase-insensitive") return {GainKind::phase_insensitive, gain_r};
  throw std::invalid_argument(
      "config: gain_mode must be \"squeeze\", \"none\" or \"phase-insensitive\"");
}

std::string to_string(SqueezeVariant variant) {
  return variant == SqueezeVariant::canonical ? "canonical" : "isotropic";
}

std::string to_string(GainKind kind) {
  switch (kind) {
    case GainKind::squeeze: return "squeeze";
    case GainKind::none: return "none";
    case GainKind::phase_insensitive: return "phase-insensitive";
  }
  return "";
}

MifConfig mif_config_from_json_text(const std::string& text) {
  const json j = parse(text);
  check_keys(j, {"n_loops", "squeeze_r", "loss_fraction", "tap_fraction", "eta",
                 "saturation_cap", "squeeze_variant", "gain_mode", "gain_r",
                 "tap_conditioning", "seed"});
  MifConfig cfg;
  cfg.n_loops = j.value("n_loops", cfg.n_loops);
  cfg.squeeze_r = j.value("squeeze_r", cfg.squeeze_r);
  cfg.loss_fraction = j.value("loss_fraction", cfg.loss_fraction);
  cfg.tap_fraction = j.value("tap_fraction", cfg.tap_fraction);
  cfg.eta = j.value("eta", cfg.eta);
  if (j.contains("saturation_cap") && !j["saturation_cap"].is_null()) {
    cfg.saturation_cap = j["saturation_cap"].get<double>();
  }
  if (j.contains("squeeze_variant")) {
    cfg.squeeze_variant = squeeze_variant_from_string(j["squeeze_variant"].get<std::string>());
  }
  const double gain_r = j.value("gain_r", 0.0);
  if (j.contains("gain_mode")) {
    cfg.gain_mode = gain_mode_from_string(j["gain_mode"].get<std::string>(), gain_r);
  } else if (j.contains("gain_r")) {
    throw std::invalid_argument("config: gain_r requires gain_mode \"phase-insensitive\"");
  }
  cfg.tap_conditioning = j.value("tap_conditioning", cfg.tap_conditioning);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

OdlConfig odl_config_from_json_text(const std::string& text) {
  const json j = parse(text);
  check_keys(j, {"n_loops", "squeeze_r", "pickoff_fraction", "inject_fraction", "gain_mode",
                 "gain_r", "n_samples", "ordered_pairs", "seed"});
  OdlConfig cfg;
  cfg.n_loops = j.value("n_loops", cfg.n_loops);
  cfg.squeeze_r = j.value("squeeze_r", cfg.squeeze_r);
  cfg.pickoff_fraction = j.value("pickoff_fraction", cfg.pickoff_fraction);
  cfg.inject_fraction = j.value("inject_fraction", cfg.inject_fraction);
  const double gain_r = j.value("gain_r", 0.0);
  if (j.contains("gain_mode")) {
    cfg.gain_mode = gain_mode_from_string(j["gain_mode"].get<std::string>(), gain_r);
  } else if (j.contains("gain_r")) {
    throw std::invalid_argument("config: gain_r requires gain_mode \"phase-insensitive\"");
  }
  cfg.n_samples = j.value("n_samples", cfg.n_samples);
  cfg.ordered_pairs = j.value("ordered_pairs", cfg.ordered_pairs);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

MifConfig mif_config_from_file(const std::string& path) {
  return mif_config_from_json_text(read_file(path));
}

OdlConfig odl_config_from_file(const std::string& path) {
  return odl_config_from_json_text(read_file(path));
}

}  // namespace goim

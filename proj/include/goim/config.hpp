#pragma once

#include <string>

#include "goim/mif.hpp"
#include "goim/odl.hpp"

namespace goim {

// JSON config loading. Keys match the config field names:
//   MIF: n_loops, squeeze_r, loss_fraction, tap_fraction, eta, saturation_cap,
//        squeeze_variant ("canonical"|"isotropic"),
//        gain_mode ("squeeze"|"none"|"phase-insensitive"), gain_r,
//        tap_conditioning, seed
//   ODL: n_loops, squeeze_r, pickoff_fraction, inject_fraction,
//        gain_mode ("squeeze"|"phase-insensitive"), gain_r, n_samples,
//        ordered_pairs, seed
// Unknown keys are rejected.
MifConfig mif_config_from_json_text(const std::string& text);
OdlConfig odl_config_from_json_text(const std::string& text);
MifConfig mif_config_from_file(const std::string& path);
OdlConfig odl_config_from_file(const std::string& path);

SqueezeVariant squeeze_variant_from_string(const std::string& name);
GainMode gain_mode_from_string(const std::string& name, double gain_r);
std::string to_string(SqueezeVariant variant);
std::string to_string(GainKind kind);

}  // namespace goim

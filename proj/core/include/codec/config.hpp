#ifndef CODEC_CONFIG_HPP
#define CODEC_CONFIG_HPP

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "codec/experiment.hpp"
#include "codec/pipeline.hpp"
#include "codec/synth.hpp"

namespace codec {

/// Value of one config key: scalar or a flat array of scalars.
using ConfigScalar = std::variant<bool, double, std::string>;
struct ConfigValue {
  std::vector<ConfigScalar> items;  // scalars hold exactly one item
  bool is_array = false;
};

/// Keys are flattened as "section.key" ("codec.kernel", "synth.n", ...).
using ConfigTable = std::map<std::string, ConfigValue>;

/// Parses the TOML subset used by the CLI config files: [section] headers,
/// key = value with booleans, numbers, quoted strings and one-level arrays.
ConfigTable parse_config(const std::string& text);
ConfigTable load_config(const std::filesystem::path& path);

/// Each applier overlays the matching section onto defaults; unknown keys in
/// the section are an error.
void apply_codec_config(const ConfigTable& table, CodecConfig& cfg);
void apply_synth_params(const ConfigTable& table, SynthParams& params);
void apply_experiment_spec(const ConfigTable& table, ExperimentSpec& spec);

}  // namespace codec

#endif  // CODEC_CONFIG_HPP

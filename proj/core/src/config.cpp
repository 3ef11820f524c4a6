#include "codec/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace codec {
namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

ConfigScalar parse_scalar(const std::string& token, std::size_t line_no) {
  if (token == "true") return true;
  if (token == "false") return false;
  if (token.size() >= 2 && token.front() == '"' && token.back() == '"')
    return token.substr(1, token.size() - 2);
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used == token.size()) return value;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config line " + std::to_string(line_no) + ": bad value '" + token +
                              "'");
}

double as_number(const ConfigValue& value, const std::string& key) {
  if (value.is_array || !std::holds_alternative<double>(value.items.front()))
    throw std::invalid_argument("config key '" + key + "' must be a number");
  return std::get<double>(value.items.front());
}

bool as_bool(const ConfigValue& value, const std::string& key) {
  if (value.is_array || !std::holds_alternative<bool>(value.items.front()))
    throw std::invalid_argument("config key '" + key + "' must be a boolean");
  return std::get<bool>(value.items.front());
}

std::string as_string(const ConfigValue& value, const std::string& key) {
  if (value.is_array || !std::holds_alternative<std::string>(value.items.front()))
    throw std::invalid_argument("config key '" + key + "' must be a string");
  return std::get<std::string>(value.items.front());
}

std::vector<double> as_numbers(const ConfigValue& value, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : value.items) {
    if (!std::holds_alternative<double>(item))
      throw std::invalid_argument("config key '" + key + "' must be an array of numbers");
    out.push_back(std::get<double>(item));
  }
  return out;
}

template <typename Handler>
void apply_section(const ConfigTable& table, const std::string& section, Handler&& handler) {
  const std::string prefix = section + ".";
  for (const auto& [key, value] : table) {
    if (key.rfind(prefix, 0) != 0) continue;
    const std::string name = key.substr(prefix.size());
    if (!handler(name, value))
      throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

}  // namespace

ConfigTable parse_config(const std::string& text) {
  ConfigTable table;
  std::istringstream in(text);
  std::string line, section;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.resize(comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }

    const auto equals = line.find('=');
    if (equals == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, equals));
    const std::string value_text = trim(line.substr(equals + 1));
    if (key.empty() || value_text.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key or value");

    ConfigValue value;
    if (value_text.front() == '[') {
      if (value_text.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": unterminated array");
      value.is_array = true;
      std::stringstream items(value_text.substr(1, value_text.size() - 2));
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (!item.empty()) value.items.push_back(parse_scalar(item, line_no));
      }
    } else {
      value.items.push_back(parse_scalar(value_text, line_no));
    }
    table[section.empty() ? key : section + "." + key] = std::move(value);
  }
  return table;
}

ConfigTable load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void apply_codec_config(const ConfigTable& table, CodecConfig& cfg) {
  apply_section(table, "codec", [&](const std::string& name, const ConfigValue& value) {
    if (name == "eps_grid") {
      cfg.eps_grid = as_numbers(value, name);
    } else if (name == "kernel") {
      cfg.kernel = static_cast<std::uint32_t>(as_number(value, name));
    } else if (name == "reconstruct_irregular") {
      cfg.reconstruct_irregular = as_bool(value, name);
    } else if (name == "reconstruct_internal") {
      cfg.reconstruct_internal = as_bool(value, name);
    } else if (name == "threshold_step") {
      cfg.threshold_step = as_number(value, name);
    } else if (name == "seed") {
      cfg.seed = static_cast<std::uint64_t>(as_number(value, name));
    } else if (name == "deviation_scale") {
      const std::string scale = as_string(value, name);
      if (scale == "class") cfg.regularity.scale = DeviationScale::kClassSize;
      else if (scale == "graph") cfg.regularity.scale = DeviationScale::kGraphOrder;
      else throw std::invalid_argument("deviation_scale must be 'class' or 'graph'");
    } else if (name == "condition_order") {
      const std::string order = as_string(value, name);
      if (order == "pivot_first") cfg.regularity.order = ConditionOrder::kPivotFirst;
      else if (order == "degree_first") cfg.regularity.order = ConditionOrder::kDegreeFirst;
      else throw std::invalid_argument("condition_order must be 'pivot_first' or 'degree_first'");
    } else if (name == "c0_overflow") {
      const std::string policy = as_string(value, name);
      if (policy == "redistribute") cfg.refinement.c0_policy = C0OverflowPolicy::kRedistributeWhenAble;
      else if (policy == "irregular") cfg.refinement.c0_policy = C0OverflowPolicy::kDeclareIrregular;
      else throw std::invalid_argument("c0_overflow must be 'redistribute' or 'irregular'");
    } else if (name == "pack_facing_certificates") {
      cfg.refinement.pack_facing_certificates = as_bool(value, name);
    } else if (name == "sparse_fill_most_connected") {
      cfg.refinement.sparse_fill_most_connected = as_bool(value, name);
    } else {
      return false;
    }
    return true;
  });
}

void apply_synth_params(const ConfigTable& table, SynthParams& params) {
  apply_section(table, "synth", [&](const std::string& name, const ConfigValue& value) {
    if (name == "n") params.n = static_cast<std::size_t>(as_number(value, name));
    else if (name == "clusters") params.clusters = static_cast<std::uint32_t>(as_number(value, name));
    else if (name == "internoise") params.internoise = as_number(value, name);
    else if (name == "intranoise") params.intranoise = as_number(value, name);
    else if (name == "balanced") params.balanced = as_bool(value, name);
    else if (name == "weighted") params.weighted = as_bool(value, name);
    else if (name == "seed") params.seed = static_cast<std::uint64_t>(as_number(value, name));
    else return false;
    return true;
  });
}

void apply_experiment_spec(const ConfigTable& table, ExperimentSpec& spec) {
  apply_section(table, "experiment", [&](const std::string& name, const ConfigValue& value) {
    if (name == "sizes") {
      spec.sizes.clear();
      for (double v : as_numbers(value, name)) spec.sizes.push_back(static_cast<std::size_t>(v));
    } else if (name == "internoise_levels") {
      spec.internoise_levels = as_numbers(value, name);
    } else if (name == "intranoise_levels") {
      spec.intranoise_levels = as_numbers(value, name);
    } else if (name == "clusters") {
      spec.clusters = static_cast<std::uint32_t>(as_number(value, name));
    } else if (name == "balanced") {
      spec.balanced = as_bool(value, name);
    } else if (name == "repetitions") {
      spec.repetitions = static_cast<std::uint32_t>(as_number(value, name));
    } else if (name == "output_dir") {
      spec.output_dir = as_string(value, name);
    } else if (name == "snapshots") {
      spec.snapshots = as_bool(value, name);
    } else {
      return false;
    }
    return true;
  });
  apply_codec_config(table, spec.codec);
}

}  // namespace codec

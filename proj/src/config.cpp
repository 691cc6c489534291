#include "uqsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uqsim/errors.hpp"

namespace uqsim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  if (value == "inf" || value == "+inf") return kInfDb;
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw ConfigError("trailing characters");
    return v;
  } catch (const ConfigError&) {
    throw ConfigError("config key '" + key + "' has malformed number '" + value + "'");
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' has malformed number '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw ConfigError("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' has malformed integer '" + value + "'");
  }
}

std::string format_double(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("config key '" + key + "' has an empty list");
  return out;
}

}  // namespace

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  ConfigMap config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    config[key] = value;
  }
  return config;
}

void apply_override(ConfigMap& config, const std::string& key_equals_value) {
  const auto eq = key_equals_value.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == key_equals_value.size())
    throw ConfigError("override must have the form key=value: " + key_equals_value);
  config[trim(key_equals_value.substr(0, eq))] = trim(key_equals_value.substr(eq + 1));
}

std::string render_config(const ConfigMap& config) {
  std::string out;
  for (const auto& [key, value] : config) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  }
  return out;
}

double config_double(const ConfigMap& c, const std::string& key, double fallback) {
  const auto it = c.find(key);
  return it == c.end() ? fallback : parse_double(key, it->second);
}

std::uint64_t config_u64(const ConfigMap& c, const std::string& key, std::uint64_t fallback) {
  const auto it = c.find(key);
  return it == c.end() ? fallback : parse_u64(key, it->second);
}

std::string config_string(const ConfigMap& c, const std::string& key, const std::string& fallback) {
  const auto it = c.find(key);
  return it == c.end() ? fallback : it->second;
}

SwitchSpec switch_spec_from_config(const ConfigMap& c) {
  SwitchSpec spec;
  spec.per_db_0 = config_double(c, "channel.per_db_0", spec.per_db_0);
  spec.per_db_1 = config_double(c, "channel.per_db_1", spec.per_db_1);
  spec.pdl_db = config_double(c, "channel.pdl_db", spec.pdl_db);
  spec.coupling_db = config_double(c, "channel.coupling_db", spec.coupling_db);
  spec.prs_loss_db = config_double(c, "channel.prs_loss_db", spec.prs_loss_db);
  spec.mzi_loss_db = config_double(c, "channel.mzi_loss_db", spec.mzi_loss_db);
  spec.er_mzi_db = config_double(c, "channel.er_mzi_db", spec.er_mzi_db);
  spec.dimension_n = static_cast<unsigned>(config_u64(c, "channel.dimension_n", spec.dimension_n));
  spec.phase_offset_rad = config_double(c, "channel.phase_offset_rad", spec.phase_offset_rad);
  spec.phase_sigma_rad = config_double(c, "channel.phase_sigma_rad", spec.phase_sigma_rad);
  spec.mc_iterations = config_u64(c, "channel.mc_iterations", spec.mc_iterations);
  spec.seed = config_u64(c, "channel.seed", spec.seed);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

void switch_spec_to_config(const SwitchSpec& spec, ConfigMap& c) {
  c["channel.per_db_0"] = format_double(spec.per_db_0);
  c["channel.per_db_1"] = format_double(spec.per_db_1);
  c["channel.pdl_db"] = format_double(spec.pdl_db);
  c["channel.coupling_db"] = format_double(spec.coupling_db);
  c["channel.prs_loss_db"] = format_double(spec.prs_loss_db);
  c["channel.mzi_loss_db"] = format_double(spec.mzi_loss_db);
  c["channel.er_mzi_db"] = format_double(spec.er_mzi_db);
  c["channel.dimension_n"] = std::to_string(spec.dimension_n);
  c["channel.phase_offset_rad"] = format_double(spec.phase_offset_rad);
  c["channel.phase_sigma_rad"] = format_double(spec.phase_sigma_rad);
  c["channel.mc_iterations"] = std::to_string(spec.mc_iterations);
  c["channel.seed"] = std::to_string(spec.seed);
}

LossBudget budget_from_config(const ConfigMap& c) {
  LossBudget budget;
  budget.waveguide_loss_db_per_cm = config_double(c, "budget.waveguide_loss_db_per_cm", budget.waveguide_loss_db_per_cm);
  budget.stage_length_cm = config_double(c, "budget.stage_length_cm", budget.stage_length_cm);
  budget.coupler_loss_db_per_facet = config_double(c, "budget.coupler_loss_db_per_facet", budget.coupler_loss_db_per_facet);
  budget.facets = static_cast<unsigned>(config_u64(c, "budget.facets", budget.facets));
  budget.dimension_n = static_cast<unsigned>(config_u64(c, "budget.dimension_n", budget.dimension_n));
  try {
    budget.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return budget;
}

void budget_to_config(const LossBudget& budget, ConfigMap& c) {
  c["budget.waveguide_loss_db_per_cm"] = format_double(budget.waveguide_loss_db_per_cm);
  c["budget.stage_length_cm"] = format_double(budget.stage_length_cm);
  c["budget.coupler_loss_db_per_facet"] = format_double(budget.coupler_loss_db_per_facet);
  c["budget.facets"] = std::to_string(budget.facets);
  c["budget.dimension_n"] = std::to_string(budget.dimension_n);
}

SweepRequest sweep_from_config(const ConfigMap& c) {
  SweepRequest req;
  req.base = switch_spec_from_config(c);
  req.budget = budget_from_config(c);
  const auto a1_name = c.find("sweep.axis1.name");
  const auto a1_values = c.find("sweep.axis1.values");
  if (a1_name == c.end() || a1_values == c.end())
    throw ConfigError("sweep config requires sweep.axis1.name and sweep.axis1.values");
  req.axis1 = SweepAxis{a1_name->second, parse_double_list("sweep.axis1.values", a1_values->second)};
  const auto a2_name = c.find("sweep.axis2.name");
  if (a2_name != c.end()) {
    const auto a2_values = c.find("sweep.axis2.values");
    if (a2_values == c.end()) throw ConfigError("sweep.axis2.name given without sweep.axis2.values");
    req.axis2 = SweepAxis{a2_name->second, parse_double_list("sweep.axis2.values", a2_values->second)};
  }
  const std::string metrics = config_string(c, "sweep.metrics", "fidelity,purity,concurrence,throughput");
  req.metrics.clear();
  std::stringstream ss(metrics);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) req.metrics.push_back(trim(item));
  try {
    req.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return req;
}

}  // namespace uqsim

#ifndef UQSIM_CONFIG_HPP
#define UQSIM_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

#include "uqsim/scaling.hpp"
#include "uqsim/switch_channel.hpp"

// Flat dotted-key configuration ("channel.per_db_0 = 23.25", '#'
// comments).  The same rendering doubles as the run-metadata record, so
// resolved configurations stay diffable.

namespace uqsim {

using ConfigMap = std::map<std::string, std::string>;

ConfigMap load_config_file(const std::string& path);   // ConfigError / IoError
void apply_override(ConfigMap& config, const std::string& key_equals_value);
std::string render_config(const ConfigMap& config);

double config_double(const ConfigMap& c, const std::string& key, double fallback);
std::uint64_t config_u64(const ConfigMap& c, const std::string& key, std::uint64_t fallback);
std::string config_string(const ConfigMap& c, const std::string& key, const std::string& fallback);

SwitchSpec switch_spec_from_config(const ConfigMap& c);
void switch_spec_to_config(const SwitchSpec& spec, ConfigMap& c);

LossBudget budget_from_config(const ConfigMap& c);
void budget_to_config(const LossBudget& budget, ConfigMap& c);

SweepRequest sweep_from_config(const ConfigMap& c);

}  // namespace uqsim

#endif

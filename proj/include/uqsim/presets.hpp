#ifndef UQSIM_PRESETS_HPP
#define UQSIM_PRESETS_HPP

#include <string>
#include <vector>

#include "uqsim/config.hpp"

// Named parameter sets: the measured device metrics for both switch
// outputs, the two arbitrary-state switching experiments, and the three
// scaling-figure sweeps.

namespace uqsim {

std::vector<std::string> simulate_preset_names();
std::vector<std::string> sweep_preset_names();

// Returns the flat config patch for a simulate preset; throws
// std::invalid_argument for unknown names.
ConfigMap simulate_preset(const std::string& name);

SweepRequest sweep_preset(const std::string& name);

}  // namespace uqsim

#endif

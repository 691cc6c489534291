#ifndef UQSIM_SERIALIZE_HPP
#define UQSIM_SERIALIZE_HPP

#include <string>

#include "uqsim/config.hpp"
#include "uqsim/switch_channel.hpp"
#include "uqsim/tomography.hpp"

// File formats: density matrices and channel outcomes as JSON (the 4x4
// matrix is a nested array of [re, im] pairs), tomography datasets as
// tab-separated text, and run metadata as the flat config format.

namespace uqsim {

std::string density_matrix_to_json(const DensityMatrix& rho);
// Re-validates every invariant on the way in.
DensityMatrix density_matrix_from_json(const std::string& text);

std::string channel_outcome_to_json(const ChannelOutcome& outcome, const std::string& fidelity_target);
ChannelOutcome channel_outcome_from_json(const std::string& text);

std::string dataset_to_text(const TomographyDataset& data);
TomographyDataset dataset_from_text(const std::string& text);

void write_file(const std::string& path, const std::string& content);  // IoError
std::string read_file(const std::string& path);                        // IoError

// Resolved config plus bookkeeping keys, rendered as flat diffable text.
void write_metadata(const std::string& output_path, const ConfigMap& resolved,
                    const std::string& command);

}  // namespace uqsim

#endif

#include "uqsim/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "uqsim/errors.hpp"
#include "uqsim/version.hpp"

namespace uqsim {

namespace {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.size() != 4) throw ConfigError("density matrix JSON must be a 4x4 array");
  ComplexMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || row.size() != 4) throw ConfigError("density matrix JSON must be a 4x4 array");
    for (std::size_t j = 0; j < 4; ++j) {
      const json& entry = row.at(j);
      if (!entry.is_array() || entry.size() != 2) throw ConfigError("matrix entries must be [re, im] pairs");
      m(i, j) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("malformed JSON document");
  return j;
}

}  // namespace

std::string density_matrix_to_json(const DensityMatrix& rho) {
  json j;
  j["rho"] = matrix_to_json(rho.matrix());
  return j.dump(2) + "\n";
}

DensityMatrix density_matrix_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("rho")) throw ConfigError("missing 'rho' field");
  return DensityMatrix::from_matrix(matrix_from_json(j.at("rho")));
}

std::string channel_outcome_to_json(const ChannelOutcome& outcome, const std::string& fidelity_target) {
  json j;
  j["fidelity"] = outcome.fidelity;
  j["fidelity_target"] = fidelity_target;
  j["purity"] = outcome.purity;
  j["concurrence"] = outcome.concurrence;
  j["throughput"] = outcome.throughput;
  j["rho_out"] = matrix_to_json(outcome.rho_out.matrix());
  return j.dump(2) + "\n";
}

ChannelOutcome channel_outcome_from_json(const std::string& text) {
  const json j = parse(text);
  for (const char* key : {"fidelity", "purity", "concurrence", "throughput", "rho_out"})
    if (!j.contains(key)) throw ConfigError(std::string("missing '") + key + "' field");
  return ChannelOutcome{DensityMatrix::from_matrix(matrix_from_json(j.at("rho_out"))),
                        j.at("throughput").get<double>(), j.at("fidelity").get<double>(),
                        j.at("purity").get<double>(), j.at("concurrence").get<double>()};
}

std::string dataset_to_text(const TomographyDataset& data) {
  std::ostringstream out;
  out << "# counts_per_setting = " << data.counts_per_setting << "\n";
  out << "signal_basis\tidler_basis\tcount\n";
  for (const auto& rec : data.records)
    out << basis_name(rec.signal) << "\t" << basis_name(rec.idler) << "\t" << rec.count << "\n";
  return out.str();
}

TomographyDataset dataset_from_text(const std::string& text) {
  TomographyDataset data;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos && line.find("counts_per_setting") != std::string::npos) {
        try {
          data.counts_per_setting = std::stoull(line.substr(eq + 1));
        } catch (const std::exception&) {
          throw ConfigError("dataset line " + std::to_string(line_no) + ": malformed counts_per_setting");
        }
      }
      continue;
    }
    if (line.rfind("signal_basis", 0) == 0) continue;  // header
    std::istringstream fields(line);
    std::string s, i, count;
    if (!(fields >> s >> i >> count))
      throw ConfigError("dataset line " + std::to_string(line_no) + ": expected 'signal idler count'");
    try {
      data.records.push_back({basis_from_name(s), basis_from_name(i), std::stoull(count)});
    } catch (const std::invalid_argument& e) {
      throw ConfigError("dataset line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return data;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_metadata(const std::string& output_path, const ConfigMap& resolved, const std::string& command) {
  ConfigMap meta = resolved;
  meta["run.command"] = command;
  meta["run.version"] = kVersion;
  write_file(output_path + ".meta", render_config(meta));
}

}  // namespace uqsim

#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "vmcorr/estimation.hpp"
#include "vmcorr/moments.hpp"
#include "vmcorr/params.hpp"
#include "vmcorr/sampling.hpp"

namespace vmcorr::io {

inline constexpr const char* kToolVersion = "0.1.0";

// %.17g
std::string format_number(double value);
// Two significant figures, as the reference tables print them.
std::string format_2sf(double value);

// CSV with header "theta,phi", one pair per line, radians.
void write_sample_csv(const std::string& path, const AngleSampleMatrix& data);
// Reads the same format back; params/config are left default.
AngleSampleMatrix read_sample_csv(const std::string& path);

// Reproducibility record written next to every output file.
struct RunManifest {
  std::string command;
  ModelParams params;
  SeriesControl control;
  std::optional<SamplerConfig> sampler;
  std::vector<std::string> outputs;
  std::string tool_version = kToolVersion;
  // Free-form extra settings (sample size, replicates, resolution, ...).
  std::vector<std::pair<std::string, std::string>> extra;
};

std::string manifest_json(const RunManifest& manifest);
void write_manifest(const std::string& path, const RunManifest& manifest);

// JSON object for a correlation report (numbers as JSON numbers).
std::string report_json(const CorrelationReport& report);

// Header and rows of the mc-validate CSV.
std::string mc_validation_csv(const std::vector<McValidation>& rows);

// Writes text to path; throws IoError.
void write_text(const std::string& path, const std::string& text);

}  // namespace vmcorr::io

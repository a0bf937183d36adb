#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "boolmodel/process.hpp"

namespace boolmodel {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kFormatVersion = 1;

/// Raised for config or file content that cannot be parsed. The message
/// names the offending field.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Shape records: {"kind": "disk", "radius": r}
//                {"kind": "rect", "halfwidth": a, "halfheight": b}
//                {"kind": "polygon", "vertices": [[x, y], ...]}
Json shape_to_json(const GrainShape& s);
GrainShape shape_from_json(const Json& j);

// Parameter laws: a number, {"uniform": [a, b]}, or
// {"values": [...], "weights": [...]}.
Json law_to_json(const ParameterLaw& l);
ParameterLaw law_from_json(const Json& j);

// Grain laws: {"family": "disk", "radius": law}
//             {"family": "rect", "halfwidth": law, "halfheight": law, "rotate": bool}
//             {"family": "fixed", "shape": shape, "rotate": bool}
// each with an optional "rmax".
Json grains_to_json(const GrainDistribution& q);
GrainDistribution grains_from_json(const Json& j);

Json window_to_json(const Window& w);
Window window_from_json(const Json& j);

/// {"gamma", "grains", "window", "seed"}. Missing fields keep the
/// defaults of ModelConfig. Validation is left to the caller.
Json model_to_json(const ModelConfig& c);
ModelConfig model_from_json(const Json& j);

/// Task parameters shared by the CLI subcommands.
struct ExperimentConfig {
  ModelConfig model;
  std::vector<double> scales{8.0, 16.0, 32.0, 64.0};
  std::size_t reps = 100;
  std::uint64_t replicate = 0;  // first replicate index
  int functional = 2;
  double tolerance = 1e-10;
  double resolution = 8.0;  // pixels per unit length
  std::optional<Probe> probe;
  std::string method = "arrangement";
  std::string output;
  std::optional<unsigned> threads;
};

Json experiment_to_json(const ExperimentConfig& c);
ExperimentConfig experiment_from_json(const Json& j);
Json read_json_file(const std::filesystem::path& p);

/// Line-oriented sample dump:
///   # boolmodel-sample 1
///   # config {...}
///   # replicate k
///   x y {shape record}
/// Several replicate blocks may follow one config line.
std::string samples_to_text(const ModelConfig& c, const std::vector<GermGrainSample>& samples);
struct SampleFile {
  ModelConfig config;
  Json config_json;
  std::vector<GermGrainSample> samples;
};
SampleFile samples_from_text(const std::string& text);

/// RFC 4180 field quoting, shortest round-trip number formatting.
std::string csv_field(const std::string& s);
std::string csv_number(double v);
std::string csv_row(const std::vector<std::string>& fields);

/// Header lines prefixed by '#': format tag, tool version and the config.
std::string comment_header(const std::string& format, const Json& config);

/// Writes to a temporary sibling and renames it over p.
void write_atomic(const std::filesystem::path& p, const std::string& content);
std::string read_text_file(const std::filesystem::path& p);

}  // namespace boolmodel

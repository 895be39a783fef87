#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "usynth/dynamics.hpp"
#include "usynth/ground_truth.hpp"
#include "usynth/scene.hpp"

namespace usynth {

// Declarative description of one run: map, rules, vehicles, camera rig,
// environment, capture schedule, seed, output. Loaded from a JSON document;
// file paths resolve relative to the document's directory.
struct ScenarioConfig {
  std::filesystem::path mapPath;
  std::optional<GeoPoint> origin;  // defaults to the extract's bounds center

  std::filesystem::path rulesPath;

  VehicleCensus census;
  PropPolicy props;
  CameraRig camera;

  EnvironmentSchedule environment;
  BoxRules annotationRules;

  int frameCount = 100;
  double frameRateHz = 10.0;

  std::uint64_t seed = 0;
  std::filesystem::path outputDir;

  double Duration() const { return frameCount / frameRateHz; }
};

// Ceteris-paribus command line overrides: one field changes, the rest of the
// document stays put.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> frames;
  std::optional<std::string> weather;
  std::optional<double> timeOfDay;
  std::optional<std::string> output;
};

// Parses and validates, collecting every violation instead of stopping at
// the first. A config is usable iff the violation list comes back empty.
// Throws Error only when the file itself cannot be read or parsed as JSON.
ScenarioConfig LoadScenarioConfig(const std::filesystem::path& path,
                                  const ConfigOverrides& overrides,
                                  std::vector<std::string>* violations);

std::vector<std::string> ValidateConfigFile(const std::filesystem::path& path);

// FNV-1a over the canonical serialized form of the effective config
// (excluding the output directory), hex encoded. Stable across runs.
std::string ConfigHash(const ScenarioConfig& config);

}  // namespace usynth

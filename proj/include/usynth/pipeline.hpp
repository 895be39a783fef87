#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "usynth/config.hpp"
#include "usynth/dataset_writer.hpp"
#include "usynth/ground_truth.hpp"
#include "usynth/road_network.hpp"

namespace usynth {

struct RunOptions {
  int threads = 0;       // 0 = hardware concurrency
  bool printProgress = false;
};

struct RunResult {
  std::filesystem::path outputDir;
  RunStats stats;
  std::string configHash;
  NetworkReport mapReport;
};

// Builds the scene once (map -> network -> grammar -> props -> vehicles) and
// renders frames on demand. Frame rendering is pure in the frame index, so
// any frame can be produced independently and identically.
class Pipeline {
 public:
  Pipeline(const ScenarioConfig& config, int threads);
  ~Pipeline();

  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  FrameBundle RenderFrame(int frameIndex);

  const SceneGraph& Scene() const;
  const RoadNetwork& Network() const;
  const NetworkReport& MapReport() const;
  const ScenarioConfig& Config() const;
  RunStats& Stats();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// map -> scene -> per-frame (dynamics, rasterize, shade, weather, ground
// truth, encode) -> manifest. Prints throughput on completion.
RunResult RunPipeline(const ScenarioConfig& config, const RunOptions& options);

// Renders the single frame floor(t * rate) with all modalities into the
// output directory. Throws when t is negative or beyond the capture window.
RunResult PreviewFrame(const ScenarioConfig& config, double t, const RunOptions& options);

}  // namespace usynth

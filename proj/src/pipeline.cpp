#include "usynth/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

#include "usynth/error.hpp"
#include "usynth/parallel.hpp"
#include "usynth/rasterizer.hpp"
#include "usynth/rules.hpp"
#include "usynth/shading.hpp"

namespace usynth {

struct Pipeline::Impl {
  ScenarioConfig config;
  int threads;

  MapData map;
  NetworkReport report;
  RoadNetwork network;
  RuleProgram rules;
  SceneGraph scene;

  GBuffer gbuffer;
  SoloCoverageCounter soloCounter;
  RunStats stats;

  Impl(const ScenarioConfig& cfg, int threadCount) : config(cfg), threads(threadCount)
  {
    map = ParseOsmFile(config.mapPath.string());
    const GeoPoint origin = config.origin.value_or(BoundsCenter(map.bounds));
    network = BuildRoadNetwork(map, origin, &report);
    rules = ParseRulesFile(config.rulesPath.string());

    SceneBuildParams params;
    params.props = config.props;
    params.census = config.census;
    params.seed = config.seed;
    params.duration = config.Duration();
    scene = BuildScene(network, rules, params);
    stats.vehicleCount = scene.trajectories.size();
  }

  FrameBundle RenderFrame(int frameIndex)
  {
    const double dt = 1.0 / config.frameRateHz;
    const double t = frameIndex * dt;
    const double tPrev = t - dt;

    const EnvironmentState env = EnvironmentAt(config.environment, t);
    const std::vector<RenderNode> nodes = SnapshotScene(scene, t, tPrev);

    const CameraPoseResult poseNow = CameraPose(config.camera, t, scene.trajectories);
    const Camera camNow = Camera::FromPose(poseNow, config.camera.intrinsics);
    const Camera camPrev =
        frameIndex > 0
            ? Camera::FromPose(CameraPose(config.camera, tPrev, scene.trajectories),
                               config.camera.intrinsics)
            : camNow;

    Rasterize(nodes, camNow, gbuffer, threads);

    FrameBundle bundle;
    bundle.frameIndex = frameIndex;
    bundle.cameraPose = poseNow;
    bundle.intrinsics = config.camera.intrinsics;
    bundle.environment = env;

    // The shaded image and the ground-truth modalities are independent; the
    // heavier ones run as parallel jobs.
    FlowField flow;
    FlowEncodeReport flowReport;
    const std::function<void()> jobs[] = {
        [&] { bundle.rgb = ApplyWeather(Shade(gbuffer, env), gbuffer, env, config.seed,
                                        static_cast<std::uint64_t>(frameIndex)); },
        [&] { bundle.semanticId = SemanticIdImage(gbuffer); },
        [&] { bundle.semanticRgb = SemanticRgbImage(gbuffer); },
        [&] { bundle.instance = InstanceImage(gbuffer); },
        [&] { bundle.depth = EncodeDepth(DepthImage(gbuffer, camNow.nearPlane)); },
        [&] {
          if (frameIndex > 0) {
            flow = ComputeFlowField(gbuffer, nodes, camNow, camPrev, dt);
          } else {
            flow = FlowField::Create(gbuffer.width, gbuffer.height);
          }
          bundle.flow = EncodeFlow(flow, &flowReport);
        },
    };
    ParallelFor(6, threads, [&](std::int64_t i) { jobs[i](); });

    bundle.boxes = DetectionBoxes(nodes, gbuffer, camNow, config.annotationRules, frameIndex,
                                  soloCounter);

    // Stats accumulation stays on the calling thread.
    ++stats.frameCount;
    stats.flowOverflowCount += flowReport.overflowCount;
    for (std::size_t p = 0; p < gbuffer.PixelCount(); ++p) ++stats.classPixels[gbuffer.classId[p]];
    for (const BoxAnnotation& box : bundle.boxes)
      ++stats.classBoxes[static_cast<std::size_t>(box.classId)];
    return bundle;
  }
};

Pipeline::Pipeline(const ScenarioConfig& config, int threads)
    : impl_(std::make_unique<Impl>(config, threads <= 0 ? DefaultThreadCount() : threads))
{
}

Pipeline::~Pipeline() = default;

FrameBundle Pipeline::RenderFrame(int frameIndex) { return impl_->RenderFrame(frameIndex); }

const SceneGraph& Pipeline::Scene() const { return impl_->scene; }
const RoadNetwork& Pipeline::Network() const { return impl_->network; }
const NetworkReport& Pipeline::MapReport() const { return impl_->report; }
const ScenarioConfig& Pipeline::Config() const { return impl_->config; }
RunStats& Pipeline::Stats() { return impl_->stats; }

RunResult RunPipeline(const ScenarioConfig& config, const RunOptions& options)
{
  Pipeline pipeline(config, options.threads);

  DatasetWriter writer(config.outputDir, config.camera.intrinsics.width,
                       config.camera.intrinsics.height, options.threads);

  std::vector<std::vector<BoxAnnotation>> boxesPerFrame;
  boxesPerFrame.reserve(config.frameCount);

  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < config.frameCount; ++i) {
    FrameBundle bundle = pipeline.RenderFrame(i);
    writer.WriteFrame(bundle);
    boxesPerFrame.push_back(std::move(bundle.boxes));
    if (options.printProgress && (i + 1) % 50 == 0)
      std::cout << "frame " << (i + 1) << "/" << config.frameCount << "\n";
  }
  const auto end = std::chrono::steady_clock::now();

  RunStats& stats = pipeline.Stats();
  stats.wallSeconds = std::chrono::duration<double>(end - start).count();
  stats.fps = stats.wallSeconds > 0.0 ? config.frameCount / stats.wallSeconds : 0.0;

  const TrackTable tracks = BuildTracks(boxesPerFrame);
  stats.trackCount = tracks.size();

  RunResult result;
  result.outputDir = config.outputDir;
  result.configHash = ConfigHash(config);
  result.stats = stats;
  result.mapReport = pipeline.MapReport();
  writer.WriteManifest(result.configHash, config.seed, stats);

  std::cout << "throughput: " << stats.fps << " fps over " << config.frameCount << " frames ("
            << stats.wallSeconds << " s)\n";
  return result;
}

RunResult PreviewFrame(const ScenarioConfig& config, double t, const RunOptions& options)
{
  if (t < 0.0) throw ValidationError("preview time must be >= 0");
  if (t > config.Duration())
    throw ValidationError("preview time " + std::to_string(t) +
                          " exceeds the capture duration of " +
                          std::to_string(config.Duration()) + " s");
  int frameIndex = static_cast<int>(std::floor(t * config.frameRateHz));
  frameIndex = std::min(frameIndex, config.frameCount - 1);

  Pipeline pipeline(config, options.threads);
  DatasetWriter writer(config.outputDir, config.camera.intrinsics.width,
                       config.camera.intrinsics.height, options.threads);
  FrameBundle bundle = pipeline.RenderFrame(frameIndex);
  writer.WriteFrame(bundle);

  RunResult result;
  result.outputDir = config.outputDir;
  result.configHash = ConfigHash(config);
  result.stats = pipeline.Stats();
  result.mapReport = pipeline.MapReport();
  std::cout << "preview frame " << frameIndex << " written to " << config.outputDir.string()
            << "\n";
  return result;
}

}  // namespace usynth

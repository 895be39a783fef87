#include "usynth/dataset_writer.hpp"

#include <json.hpp>

#include <cstdio>

#include "usynth/error.hpp"
#include "usynth/parallel.hpp"
#include "usynth/png_io.hpp"

namespace usynth {

namespace {

const char* kModalities[] = {"rgb", "semantic_id", "semantic_rgb", "instance", "depth", "flow"};

std::string FormatDouble(double v, int decimals)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string DatasetWriter::FrameName(int index)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06d.png", index);
  return buf;
}

DatasetWriter::DatasetWriter(const std::filesystem::path& rootDir, int width, int height,
                             int threads)
    : root_(rootDir), width_(width), height_(height), threads_(threads)
{
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw Error("cannot create output directory " + root_.string() + ": " + ec.message());
  for (const char* m : kModalities) {
    std::filesystem::create_directories(root_ / m, ec);
    if (ec) throw Error("cannot create " + (root_ / m).string() + ": " + ec.message());
  }
  annotations_.open(root_ / "annotations.csv", std::ios::trunc);
  if (!annotations_) throw Error("cannot open " + (root_ / "annotations.csv").string());
  annotations_ << "frame,track_id,class_id,x_min,y_min,x_max,y_max,occlusion_rate,truncated\n";
}

void DatasetWriter::WriteFrame(const FrameBundle& bundle)
{
  const auto check = [&](int w, int h, const char* what) {
    if (w != width_ || h != height_)
      throw ValidationError(std::string(what) + " resolution " + std::to_string(w) + "x" +
                            std::to_string(h) + " does not match the configured " +
                            std::to_string(width_) + "x" + std::to_string(height_));
  };
  check(bundle.rgb.width, bundle.rgb.height, "rgb");
  check(bundle.semanticId.width, bundle.semanticId.height, "semantic_id");
  check(bundle.semanticRgb.width, bundle.semanticRgb.height, "semantic_rgb");
  check(bundle.instance.width, bundle.instance.height, "instance");
  check(bundle.depth.width, bundle.depth.height, "depth");
  check(bundle.flow.width, bundle.flow.height, "flow");

  const std::string name = FrameName(bundle.frameIndex);
  // The six encodes are independent files; run them on the pool.
  const std::function<void()> jobs[] = {
      [&] { WritePng((root_ / "rgb" / name).string(), bundle.rgb); },
      [&] { WritePng((root_ / "semantic_id" / name).string(), bundle.semanticId); },
      [&] { WritePng((root_ / "semantic_rgb" / name).string(), bundle.semanticRgb); },
      [&] { WritePng((root_ / "instance" / name).string(), bundle.instance); },
      [&] { WritePng((root_ / "depth" / name).string(), bundle.depth); },
      [&] { WritePng((root_ / "flow" / name).string(), bundle.flow); },
  };
  ParallelFor(6, threads_, [&](std::int64_t i) { jobs[i](); });

  for (const BoxAnnotation& box : bundle.boxes) {
    annotations_ << box.frame << ',' << box.trackId << ','
                 << static_cast<int>(box.classId) << ',' << FormatDouble(box.xMin, 3) << ','
                 << FormatDouble(box.yMin, 3) << ',' << FormatDouble(box.xMax, 3) << ','
                 << FormatDouble(box.yMax, 3) << ',' << FormatDouble(box.occlusionRate, 6) << ','
                 << (box.truncated ? 1 : 0) << '\n';
  }
  if (!annotations_) throw Error("failed writing " + (root_ / "annotations.csv").string());
}

void DatasetWriter::WriteManifest(const std::string& configHash, std::uint64_t seed,
                                  const RunStats& stats)
{
  annotations_.flush();

  nlohmann::ordered_json manifest;
  manifest["format_version"] = kDatasetFormatVersion;
  manifest["flow_format_version"] = kFlowFormatVersion;
  manifest["annotation_format_version"] = kAnnotationFormatVersion;
  manifest["config_hash"] = configHash;
  manifest["seed"] = seed;
  manifest["frame_count"] = stats.frameCount;
  manifest["resolution"] = {width_, height_};
  manifest["vehicle_count"] = stats.vehicleCount;
  manifest["track_count"] = stats.trackCount;
  manifest["flow_overflow_count"] = stats.flowOverflowCount;

  nlohmann::ordered_json palette = nlohmann::ordered_json::array();
  for (const SemanticClass& c : SemanticClasses()) {
    palette.push_back({{"id", static_cast<int>(c.id)},
                       {"name", std::string(c.name)},
                       {"color", {c.paletteColor.r, c.paletteColor.g, c.paletteColor.b}},
                       {"pixels", stats.classPixels[static_cast<std::size_t>(c.id)]},
                       {"boxes", stats.classBoxes[static_cast<std::size_t>(c.id)]}});
  }
  manifest["palette"] = palette;

  // Wall-clock section: excluded from determinism comparisons.
  manifest["throughput_fps"] = stats.fps;
  manifest["wall_seconds"] = stats.wallSeconds;

  std::ofstream out(root_ / "manifest.json", std::ios::trunc);
  if (!out) throw Error("cannot open " + (root_ / "manifest.json").string());
  out << manifest.dump(2) << "\n";
}

}  // namespace usynth

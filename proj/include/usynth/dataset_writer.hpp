#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "usynth/codecs.hpp"
#include "usynth/dynamics.hpp"
#include "usynth/ground_truth.hpp"

namespace usynth {

inline constexpr int kDatasetFormatVersion = 1;
inline constexpr int kFlowFormatVersion = 1;
inline constexpr int kAnnotationFormatVersion = 1;

// Everything produced for one frame.
struct FrameBundle {
  int frameIndex = 0;
  ImageRgb8 rgb;
  ImageGray8 semanticId;
  ImageRgb8 semanticRgb;
  ImageGray16 instance;
  ImageGray16 depth;
  ImageRgb16 flow;
  std::vector<BoxAnnotation> boxes;
  CameraPoseResult cameraPose;
  CameraIntrinsicsConfig intrinsics;
  EnvironmentState environment;
};

struct RunStats {
  std::uint64_t frameCount = 0;
  std::array<std::uint64_t, kClassCount> classPixels{};
  std::array<std::uint64_t, kClassCount> classBoxes{};
  std::uint64_t vehicleCount = 0;
  std::uint64_t trackCount = 0;
  std::uint64_t flowOverflowCount = 0;
  double fps = 0.0;
  double wallSeconds = 0.0;
};

// Writes one directory per modality plus annotations.csv and manifest.json.
// Frame images may be encoded on any thread; annotation rows go through the
// single writer in frame order.
class DatasetWriter {
 public:
  DatasetWriter(const std::filesystem::path& rootDir, int width, int height, int threads);

  // Encodes and writes every modality of the bundle; appends CSV rows sorted
  // by (frame, trackId). Throws on I/O failure or resolution mismatch.
  void WriteFrame(const FrameBundle& bundle);

  void WriteManifest(const std::string& configHash, std::uint64_t seed, const RunStats& stats);

  const std::filesystem::path& Root() const { return root_; }

  static std::string FrameName(int index);  // zero-padded "%06d.png"

 private:
  std::filesystem::path root_;
  int width_;
  int height_;
  int threads_;
  std::ofstream annotations_;
};

}  // namespace usynth

#pragma once

#include <cstdint>

#include "usynth/ground_truth.hpp"
#include "usynth/image.hpp"

namespace usynth {

// KITTI-convention flow image: 16-bit RGB with
//   channel 1 = round(u * 64 + 32768), channel 2 = round(v * 64 + 32768)
// clamped to [0, 65535], channel 3 = validity. Decoding inverts within
// 1/128 px. Components beyond +-512 px clamp and are counted.
struct FlowEncodeReport {
  std::size_t overflowCount = 0;
};

ImageRgb16 EncodeFlow(const FlowField& flow, FlowEncodeReport* report = nullptr);
FlowField DecodeFlow(const ImageRgb16& img);

// Normalized depth in [0, 1] quantized to 16 bits; decode inverts within
// 1/131070.
ImageGray16 EncodeDepth(const ImageGrayF& depth);
ImageGrayF DecodeDepth(const ImageGray16& img);

}  // namespace usynth

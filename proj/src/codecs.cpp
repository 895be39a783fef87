#include "usynth/codecs.hpp"

#include <algorithm>
#include <cmath>

#include "usynth/error.hpp"

namespace usynth {

namespace {

constexpr double kFlowScale = 64.0;
constexpr double kFlowOffset = 32768.0;

std::uint16_t EncodeFlowComponent(double value, bool* overflowed)
{
  const double raw = std::round(value * kFlowScale + kFlowOffset);
  if (raw < 0.0 || raw > 65535.0) {
    *overflowed = true;
    return static_cast<std::uint16_t>(std::clamp(raw, 0.0, 65535.0));
  }
  return static_cast<std::uint16_t>(raw);
}

}  // namespace

ImageRgb16 EncodeFlow(const FlowField& flow, FlowEncodeReport* report)
{
  ImageRgb16 img = ImageRgb16::Create(flow.width, flow.height);
  std::size_t overflow = 0;
  for (std::size_t p = 0; p < flow.u.size(); ++p) {
    std::uint16_t* px = &img.data[p * 3];
    if (!flow.valid[p]) {
      px[0] = static_cast<std::uint16_t>(kFlowOffset);
      px[1] = static_cast<std::uint16_t>(kFlowOffset);
      px[2] = 0;
      continue;
    }
    bool overflowed = false;
    px[0] = EncodeFlowComponent(flow.u[p], &overflowed);
    px[1] = EncodeFlowComponent(flow.v[p], &overflowed);
    px[2] = 1;
    if (overflowed) ++overflow;
  }
  if (report) report->overflowCount = overflow;
  return img;
}

FlowField DecodeFlow(const ImageRgb16& img)
{
  FlowField flow = FlowField::Create(img.width, img.height);
  for (std::size_t p = 0; p < flow.u.size(); ++p) {
    const std::uint16_t* px = &img.data[p * 3];
    if (px[2] == 0) continue;
    flow.u[p] = static_cast<float>((px[0] - kFlowOffset) / kFlowScale);
    flow.v[p] = static_cast<float>((px[1] - kFlowOffset) / kFlowScale);
    flow.valid[p] = 1;
  }
  return flow;
}

ImageGray16 EncodeDepth(const ImageGrayF& depth)
{
  ImageGray16 img = ImageGray16::Create(depth.width, depth.height);
  for (std::size_t p = 0; p < depth.data.size(); ++p) {
    const double d = depth.data[p];
    if (d < 0.0 || d > 1.0)
      throw ValidationError("depth values must lie in [0, 1] before encoding");
    img.data[p] = static_cast<std::uint16_t>(std::lround(d * 65535.0));
  }
  return img;
}

ImageGrayF DecodeDepth(const ImageGray16& img)
{
  ImageGrayF depth = ImageGrayF::Create(img.width, img.height);
  for (std::size_t p = 0; p < img.data.size(); ++p)
    depth.data[p] = static_cast<float>(img.data[p] / 65535.0);
  return depth;
}

}  // namespace usynth

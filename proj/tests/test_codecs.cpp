#include <doctest.h>

#include <cmath>

#include "usynth/codecs.hpp"
#include "usynth/rng.hpp"

using namespace usynth;

TEST_CASE("flow encoding anchor values")
{
  FlowField flow = FlowField::Create(3, 1);
  flow.valid = {1, 1, 0};
  flow.u = {0.0f, 1.0f, 5.0f};  // invalid pixel's payload must be zeroed
  flow.v = {0.0f, -2.0f, 0.0f};

  const ImageRgb16 img = EncodeFlow(flow, nullptr);
  CHECK(img.data[0] == 32768);  // u = 0
  CHECK(img.data[2] == 1);      // valid
  CHECK(img.data[3] == 32832);  // u = 1: 64 + 32768
  CHECK(img.data[4] == 32640);  // v = -2: -128 + 32768
  CHECK(img.data[6] == 32768);  // invalid: zero flow
  CHECK(img.data[7] == 32768);
  CHECK(img.data[8] == 0);
}

TEST_CASE("flow decode inverts within 1/128 px")
{
  FlowField flow = FlowField::Create(64, 4);
  for (std::size_t p = 0; p < flow.u.size(); ++p) {
    flow.u[p] = static_cast<float>(RandRange(3, "u"_tag, p, -500.0, 500.0));
    flow.v[p] = static_cast<float>(RandRange(3, "v"_tag, p, -500.0, 500.0));
    flow.valid[p] = 1;
  }
  const FlowField back = DecodeFlow(EncodeFlow(flow, nullptr));
  for (std::size_t p = 0; p < flow.u.size(); ++p) {
    CHECK(back.valid[p] == 1);
    CHECK(std::abs(back.u[p] - flow.u[p]) <= 1.0 / 128.0);
    CHECK(std::abs(back.v[p] - flow.v[p]) <= 1.0 / 128.0);
  }
}

TEST_CASE("flow overflow clamps and is counted")
{
  FlowField flow = FlowField::Create(2, 1);
  flow.valid = {1, 1};
  flow.u = {700.0f, 0.0f};
  flow.v = {0.0f, -900.0f};
  FlowEncodeReport report;
  const ImageRgb16 img = EncodeFlow(flow, &report);
  CHECK(report.overflowCount == 2);
  CHECK(img.data[0] == 65535);
  CHECK(img.data[4] == 0);
}

TEST_CASE("encode/decode/encode is byte idempotent")
{
  FlowField flow = FlowField::Create(32, 8);
  for (std::size_t p = 0; p < flow.u.size(); ++p) {
    flow.u[p] = static_cast<float>(RandRange(8, "u"_tag, p, -30.0, 30.0));
    flow.v[p] = static_cast<float>(RandRange(8, "v"_tag, p, -30.0, 30.0));
    flow.valid[p] = RandUnit(8, "valid"_tag, p) < 0.8 ? 1 : 0;
  }
  const ImageRgb16 once = EncodeFlow(flow, nullptr);
  const ImageRgb16 twice = EncodeFlow(DecodeFlow(once), nullptr);
  CHECK(once == twice);

  ImageGrayF depth = ImageGrayF::Create(32, 8);
  for (std::size_t p = 0; p < depth.data.size(); ++p)
    depth.data[p] = static_cast<float>(RandUnit(9, "d"_tag, p));
  const ImageGray16 d1 = EncodeDepth(depth);
  const ImageGray16 d2 = EncodeDepth(DecodeDepth(d1));
  CHECK(d1 == d2);
}

TEST_CASE("depth encoding anchor values")
{
  ImageGrayF depth = ImageGrayF::Create(3, 1);
  depth.data = {0.0f, 1.0f, 0.5f};
  const ImageGray16 img = EncodeDepth(depth);
  CHECK(img.data[0] == 0);
  CHECK(img.data[1] == 65535);
  CHECK(img.data[2] == 32768);  // round(0.5 * 65535)
}

TEST_CASE("depth decode inverts within 1/131070")
{
  ImageGrayF depth = ImageGrayF::Create(256, 1);
  for (int i = 0; i < 256; ++i) depth.data[i] = static_cast<float>(i / 255.0);
  const ImageGrayF back = DecodeDepth(EncodeDepth(depth));
  for (int i = 0; i < 256; ++i)
    CHECK(std::abs(back.data[i] - depth.data[i]) <= 1.0 / 131070.0 + 1e-7);
}

TEST_CASE("metric depth round trip: 1e-4 relative error needs z/near <= 13.1")
{
  // d = 1 - near/z quantized to 16 bits; recovered z = near/(1 - d). The
  // worst-case relative error is (z/near)/131070, so a near plane of 8 m
  // covers z up to 100 m within 1e-4.
  const double near = 8.0;
  for (double z = near; z <= 100.0; z += 0.37) {
    const double d = 1.0 - near / z;
    const std::uint16_t q = static_cast<std::uint16_t>(std::lround(d * 65535.0));
    const double zBack = near / (1.0 - q / 65535.0);
    CHECK(std::abs(zBack - z) / z < 1e-4);
  }
}

TEST_CASE("sky depth decodes to exactly one")
{
  ImageGrayF depth = ImageGrayF::Create(1, 1);
  depth.data = {1.0f};
  const ImageGrayF back = DecodeDepth(EncodeDepth(depth));
  CHECK(back.data[0] == 1.0f);
}

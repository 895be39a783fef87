#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "usynth/dataset_writer.hpp"
#include "usynth/error.hpp"
#include "usynth/png_io.hpp"
#include "usynth/rng.hpp"

using namespace usynth;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir(const char* name)
  {
    path = fs::temp_directory_path() / name;
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

FrameBundle MakeBundle(int index, int w, int h)
{
  FrameBundle b;
  b.frameIndex = index;
  b.rgb = ImageRgb8::Create(w, h);
  b.semanticId = ImageGray8::Create(w, h);
  b.semanticRgb = ImageRgb8::Create(w, h);
  b.instance = ImageGray16::Create(w, h);
  b.depth = ImageGray16::Create(w, h);
  b.flow = ImageRgb16::Create(w, h);
  for (std::size_t i = 0; i < b.rgb.data.size(); ++i)
    b.rgb.data[i] = static_cast<std::uint8_t>(RandU64(1, index, i) & 0xff);
  for (std::size_t i = 0; i < b.depth.data.size(); ++i)
    b.depth.data[i] = static_cast<std::uint16_t>(RandU64(2, index, i) & 0xffff);
  return b;
}

}  // namespace

TEST_CASE("png round trips are lossless for all modality formats")
{
  TempDir tmp("usynth_png_test");

  ImageRgb8 rgb = ImageRgb8::Create(33, 17);
  for (std::size_t i = 0; i < rgb.data.size(); ++i)
    rgb.data[i] = static_cast<std::uint8_t>(RandU64(1, 1, i) & 0xff);
  WritePng((tmp.path / "rgb.png").string(), rgb);
  CHECK(ReadPngRgb8((tmp.path / "rgb.png").string()) == rgb);

  ImageGray16 g16 = ImageGray16::Create(21, 9);
  for (std::size_t i = 0; i < g16.data.size(); ++i)
    g16.data[i] = static_cast<std::uint16_t>(RandU64(2, 1, i) & 0xffff);
  WritePng((tmp.path / "g16.png").string(), g16);
  CHECK(ReadPngGray16((tmp.path / "g16.png").string()) == g16);

  ImageRgb16 rgb16 = ImageRgb16::Create(14, 11);
  for (std::size_t i = 0; i < rgb16.data.size(); ++i)
    rgb16.data[i] = static_cast<std::uint16_t>(RandU64(3, 1, i) & 0xffff);
  WritePng((tmp.path / "rgb16.png").string(), rgb16);
  CHECK(ReadPngRgb16((tmp.path / "rgb16.png").string()) == rgb16);

  ImageGray8 g8 = ImageGray8::Create(19, 23);
  for (std::size_t i = 0; i < g8.data.size(); ++i)
    g8.data[i] = static_cast<std::uint8_t>(RandU64(4, 1, i) & 0xff);
  WritePng((tmp.path / "g8.png").string(), g8);
  CHECK(ReadPngGray8((tmp.path / "g8.png").string()) == g8);
}

TEST_CASE("frame bundle lands in six modality directories")
{
  TempDir tmp("usynth_writer_test");
  DatasetWriter writer(tmp.path / "out", 16, 12, 1);
  FrameBundle bundle = MakeBundle(7, 16, 12);
  BoxAnnotation box;
  box.frame = 7;
  box.trackId = 3;
  box.classId = ClassId::kCar;
  box.xMin = 1.0;
  box.yMin = 2.0;
  box.xMax = 5.5;
  box.yMax = 7.25;
  box.occlusionRate = 0.125;
  bundle.boxes = {box, box, box};
  writer.WriteFrame(bundle);

  for (const char* m : {"rgb", "semantic_id", "semantic_rgb", "instance", "depth", "flow"})
    CHECK(fs::exists(tmp.path / "out" / m / "000007.png"));

  // Read back the rgb plane byte-identically.
  CHECK(ReadPngRgb8((tmp.path / "out/rgb/000007.png").string()) == bundle.rgb);

  RunStats stats;
  stats.frameCount = 1;
  writer.WriteManifest("cafebabe", 42, stats);

  std::ifstream csv(tmp.path / "out/annotations.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "frame,track_id,class_id,x_min,y_min,x_max,y_max,occlusion_rate,truncated");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line == "7,3,2,1.000,2.000,5.500,7.250,0.125000,0");
  }
  CHECK(rows == 3);
}

TEST_CASE("resolution mismatch is rejected with a clear error")
{
  TempDir tmp("usynth_writer_mismatch");
  DatasetWriter writer(tmp.path / "out", 16, 12, 1);
  FrameBundle bundle = MakeBundle(0, 8, 12);
  CHECK_THROWS_AS(writer.WriteFrame(bundle), ValidationError);
}

TEST_CASE("manifest records palette, counts, and format versions")
{
  TempDir tmp("usynth_manifest_test");
  DatasetWriter writer(tmp.path / "out", 4, 4, 1);
  RunStats stats;
  stats.frameCount = 100;
  stats.vehicleCount = 67;
  stats.classPixels[3] = 1234;
  writer.WriteManifest("deadbeef", 7, stats);

  std::ifstream in(tmp.path / "out/manifest.json");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  CHECK(text.find("\"frame_count\": 100") != std::string::npos);
  CHECK(text.find("\"config_hash\": \"deadbeef\"") != std::string::npos);
  CHECK(text.find("\"vehicle_count\": 67") != std::string::npos);
  CHECK(text.find("\"format_version\": 1") != std::string::npos);
  // All fifteen palette rows present.
  std::size_t rows = 0, pos = 0;
  while ((pos = text.find("\"name\":", pos)) != std::string::npos) {
    ++rows;
    pos += 7;
  }
  CHECK(rows == 15);
}

TEST_CASE("identical pixels give byte-identical png files")
{
  TempDir tmp("usynth_png_determinism");
  ImageRgb8 img = ImageRgb8::Create(40, 30);
  for (std::size_t i = 0; i < img.data.size(); ++i)
    img.data[i] = static_cast<std::uint8_t>(RandU64(5, 0, i) & 0xff);
  WritePng((tmp.path / "a.png").string(), img);
  WritePng((tmp.path / "b.png").string(), img);
  std::ifstream a(tmp.path / "a.png", std::ios::binary), b(tmp.path / "b.png", std::ios::binary);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());
}

#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "usynth/config.hpp"
#include "usynth/error.hpp"

using namespace usynth;
namespace fs = std::filesystem;

namespace {

const char* kOnboardPreset = USYNTH_REPO_DIR "/assets/presets/onboard.json";
const char* kSurveillancePreset = USYNTH_REPO_DIR "/assets/presets/surveillance.json";

fs::path WriteTempConfig(const char* name, const std::string& body)
{
  const fs::path path = fs::temp_directory_path() / name;
  std::ofstream out(path, std::ios::trunc);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("shipped presets validate cleanly")
{
  CHECK(ValidateConfigFile(kOnboardPreset).empty());
  CHECK(ValidateConfigFile(kSurveillancePreset).empty());
}

TEST_CASE("the onboard preset mirrors the vehicle-mounted experiment")
{
  std::vector<std::string> violations;
  const ScenarioConfig config = LoadScenarioConfig(kOnboardPreset, {}, &violations);
  REQUIRE(violations.empty());
  CHECK(config.camera.kind == CameraKind::kOnboard);
  CHECK(config.camera.mountHeight == 2.0);
  CHECK(config.camera.intrinsics.width == 500);
  CHECK(config.camera.intrinsics.height == 375);
  CHECK(config.census.Total() == 67);
  CHECK(config.census.ParkedTotal() == 52);
  CHECK(config.frameRateHz == 10.0);
}

TEST_CASE("the surveillance preset mirrors the intersection experiment")
{
  std::vector<std::string> violations;
  const ScenarioConfig config = LoadScenarioConfig(kSurveillancePreset, {}, &violations);
  REQUIRE(violations.empty());
  CHECK(config.camera.kind == CameraKind::kSurveillance);
  CHECK(config.camera.rotationRateDegPerSec == 10.0);
  CHECK(config.camera.rotationRangeDeg == 180.0);
  CHECK(config.camera.liftRateMPerSec == 0.1);
  CHECK(config.camera.liftMin == 2.0);
  CHECK(config.camera.liftMax == 5.0);
}

TEST_CASE("all violations are reported at once")
{
  const fs::path path = WriteTempConfig("usynth_bad_config.json", R"({
    "map": {"path": ")" USYNTH_REPO_DIR R"(/assets/maps/fixture_city.osm"},
    "rules": {"path": "no_such_file.rules"},
    "capture": {"frames": 0},
    "output": "out/x"
  })");
  const auto violations = ValidateConfigFile(path);
  CHECK(violations.size() == 2);  // missing rule file + zero frames
  fs::remove(path);
}

TEST_CASE("unknown weather names the field and the allowed values")
{
  const fs::path path = WriteTempConfig("usynth_weather_config.json", R"({
    "map": {"path": ")" USYNTH_REPO_DIR R"(/assets/maps/fixture_city.osm"},
    "rules": {"path": ")" USYNTH_REPO_DIR R"(/assets/rules/downtown.rules"},
    "environment": {"weather": "hail"},
    "output": "out/x"
  })");
  const auto violations = ValidateConfigFile(path);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("hail") != std::string::npos);
  CHECK(violations[0].find("sunny") != std::string::npos);
  CHECK(violations[0].find("foggy") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("unreadable config raises an error")
{
  CHECK_THROWS_AS(ValidateConfigFile("/no/such/config.json"), Error);
}

TEST_CASE("overrides change the effective config and its hash")
{
  std::vector<std::string> violations;
  const ScenarioConfig base = LoadScenarioConfig(kOnboardPreset, {}, &violations);
  REQUIRE(violations.empty());

  ConfigOverrides overrides;
  overrides.seed = 999;
  overrides.frames = 7;
  overrides.weather = "foggy";
  overrides.timeOfDay = 6.0;
  const ScenarioConfig changed = LoadScenarioConfig(kOnboardPreset, overrides, &violations);
  REQUIRE(violations.empty());
  CHECK(changed.seed == 999);
  CHECK(changed.frameCount == 7);
  CHECK(changed.environment.weather == Weather::kFoggy);
  CHECK(changed.environment.startHour == 6.0);
  CHECK(ConfigHash(base) != ConfigHash(changed));
  CHECK(ConfigHash(base) == ConfigHash(LoadScenarioConfig(kOnboardPreset, {}, &violations)));
}

TEST_CASE("relative outputs resolve against the output root variable")
{
  setenv("URBANSYNTH_OUTPUT_ROOT", "/tmp/usynth_root", 1);
  std::vector<std::string> violations;
  const ScenarioConfig config = LoadScenarioConfig(kOnboardPreset, {}, &violations);
  unsetenv("URBANSYNTH_OUTPUT_ROOT");
  REQUIRE(violations.empty());
  CHECK(config.outputDir == fs::path("/tmp/usynth_root/out/onboard"));
}

#include "usynth/config.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>

#include "usynth/error.hpp"
#include "usynth/rng.hpp"

namespace usynth {

namespace {

using nlohmann::json;

template <typename T>
T Get(const json& j, const char* key, T fallback)
{
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

void ParseVehicleCounts(const json& j, const char* key, int* car, int* bus, int* truck,
                        std::vector<std::string>& violations)
{
  if (!j.contains(key)) return;
  const json& counts = j.at(key);
  if (!counts.is_object()) {
    violations.push_back(std::string("vehicles.") + key + " must be an object of counts");
    return;
  }
  for (const auto& [type, value] : counts.items()) {
    if (!value.is_number_integer() || value.get<int>() < 0) {
      violations.push_back("vehicles." + std::string(key) + "." + type +
                           " must be a non-negative integer");
      continue;
    }
    const int n = value.get<int>();
    if (type == "car") {
      *car = n;
    } else if (type == "bus") {
      *bus = n;
    } else if (type == "truck") {
      *truck = n;
    } else {
      violations.push_back("vehicles." + std::string(key) + ": unknown type '" + type +
                           "' (allowed: car, bus, truck)");
    }
  }
}

}  // namespace

ScenarioConfig LoadScenarioConfig(const std::filesystem::path& path,
                                  const ConfigOverrides& overrides,
                                  std::vector<std::string>* violations)
{
  std::vector<std::string> errs;
  ScenarioConfig config;

  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("config is not valid JSON: " + std::string(e.what()));
  }

  const std::filesystem::path baseDir = path.has_parent_path()
                                            ? path.parent_path()
                                            : std::filesystem::path(".");

  // Map
  if (doc.contains("map") && doc["map"].contains("path")) {
    config.mapPath = baseDir / doc["map"]["path"].get<std::string>();
    if (!std::filesystem::exists(config.mapPath))
      errs.push_back("map.path does not exist: " + config.mapPath.string());
  } else {
    errs.push_back("map.path is required");
  }
  if (doc.contains("map") && doc["map"].contains("origin")) {
    const json& o = doc["map"]["origin"];
    if (o.contains("lat") && o.contains("lon")) {
      config.origin = GeoPoint{o["lat"].get<double>(), o["lon"].get<double>()};
    } else {
      errs.push_back("map.origin needs both lat and lon");
    }
  }

  // Rules
  if (doc.contains("rules") && doc["rules"].contains("path")) {
    config.rulesPath = baseDir / doc["rules"]["path"].get<std::string>();
    if (!std::filesystem::exists(config.rulesPath))
      errs.push_back("rules.path does not exist: " + config.rulesPath.string());
  } else {
    errs.push_back("rules.path is required");
  }

  // Vehicles
  if (doc.contains("vehicles")) {
    const json& v = doc["vehicles"];
    ParseVehicleCounts(v, "parked", &config.census.parkedCars, &config.census.parkedBuses,
                       &config.census.parkedTrucks, errs);
    ParseVehicleCounts(v, "moving", &config.census.movingCars, &config.census.movingBuses,
                       &config.census.movingTrucks, errs);
    config.census.movingSpeed = Get(v, "moving_speed", 10.0);
    if (config.census.movingSpeed < 0.0) errs.push_back("vehicles.moving_speed must be >= 0");
  }

  // Camera
  if (doc.contains("camera")) {
    const json& c = doc["camera"];
    const std::string preset = Get<std::string>(c, "preset", "onboard");
    if (preset == "onboard") {
      config.camera.kind = CameraKind::kOnboard;
    } else if (preset == "surveillance") {
      config.camera.kind = CameraKind::kSurveillance;
    } else {
      errs.push_back("camera.preset must be one of: onboard, surveillance (got '" + preset +
                     "')");
    }
    config.camera.intrinsics.width = Get(c, "width", 500);
    config.camera.intrinsics.height = Get(c, "height", 375);
    config.camera.intrinsics.horizontalFovDeg = Get(c, "fov_deg", 60.0);
    config.camera.intrinsics.nearPlane = Get(c, "near", 0.5);
    if (config.camera.intrinsics.width <= 0 || config.camera.intrinsics.height <= 0)
      errs.push_back("camera resolution must be positive");
    if (config.camera.intrinsics.horizontalFovDeg <= 0.0 ||
        config.camera.intrinsics.horizontalFovDeg >= 180.0)
      errs.push_back("camera.fov_deg must lie in (0, 180)");
    if (config.camera.intrinsics.nearPlane <= 0.0) errs.push_back("camera.near must be > 0");

    if (c.contains("onboard")) {
      const json& o = c["onboard"];
      config.camera.mountHeight = Get(o, "mount_height", 2.0);
      config.camera.yawOffsetDeg = Get(o, "yaw_offset_deg", 0.0);
      config.camera.hostTrajectoryId = Get(o, "host_trajectory", 0u);
    }
    if (c.contains("surveillance")) {
      const json& s = c["surveillance"];
      if (s.contains("position") && s["position"].is_array() && s["position"].size() == 2) {
        config.camera.position = {s["position"][0].get<double>(), s["position"][1].get<double>()};
      }
      config.camera.initialYawDeg = Get(s, "initial_yaw_deg", 0.0);
      config.camera.rotationRateDegPerSec = Get(s, "rotation_rate_deg_s", 10.0);
      config.camera.rotationRangeDeg = Get(s, "rotation_range_deg", 180.0);
      config.camera.liftRateMPerSec = Get(s, "lift_rate_m_s", 0.1);
      if (s.contains("lift_range") && s["lift_range"].is_array() && s["lift_range"].size() == 2) {
        config.camera.liftMin = s["lift_range"][0].get<double>();
        config.camera.liftMax = s["lift_range"][1].get<double>();
      }
      config.camera.pitchDeg = Get(s, "pitch_deg", -10.0);
      if (config.camera.liftMin >= config.camera.liftMax)
        errs.push_back("camera.surveillance.lift_range must have min < max");
    }
  }

  // Environment
  if (doc.contains("environment")) {
    const json& e = doc["environment"];
    const std::string weather = Get<std::string>(e, "weather", "sunny");
    if (const auto w = WeatherFromName(weather)) {
      config.environment.weather = *w;
    } else {
      errs.push_back("environment.weather '" + weather +
                     "' unknown (allowed: sunny, cloudy, rainy, foggy)");
    }
    config.environment.startHour = Get(e, "time_of_day", 12.0);
    config.environment.hoursPerSecond = Get(e, "time_rate", 0.0);
    config.environment.fogDensity = Get(e, "fog_density", 0.03);
    config.environment.ambient = Get(e, "ambient", 0.2);
    if (config.environment.startHour < 0.0 || config.environment.startHour >= 24.0)
      errs.push_back("environment.time_of_day must lie in [0, 24)");
    if (config.environment.fogDensity < 0.0)
      errs.push_back("environment.fog_density must be >= 0");
  }

  // Props
  if (doc.contains("props")) {
    const json& p = doc["props"];
    config.props.spacing = Get(p, "spacing", 15.0);
    config.props.pedestrians = Get(p, "pedestrians", 0);
    config.props.cyclists = Get(p, "cyclists", 0);
    config.props.chairs = Get(p, "chairs", 0);
    config.props.billboards = Get(p, "billboards", false);
    config.props.fences = Get(p, "fences", false);
    config.props.trafficControl = Get(p, "traffic_control", true);
    if (config.props.pedestrians < 0 || config.props.cyclists < 0 || config.props.chairs < 0)
      errs.push_back("props counts must be >= 0");
  }

  // Annotation rules
  if (doc.contains("annotations")) {
    const json& a = doc["annotations"];
    config.annotationRules.minWidth = Get(a, "min_width", 15.0);
    config.annotationRules.minHeight = Get(a, "min_height", 10.0);
    config.annotationRules.occlusionThreshold = Get(a, "occlusion_threshold", 0.75);
    if (config.annotationRules.occlusionThreshold < 0.0 ||
        config.annotationRules.occlusionThreshold > 1.0)
      errs.push_back("annotations.occlusion_threshold must lie in [0, 1]");
  }

  // Capture
  if (doc.contains("capture")) {
    const json& c = doc["capture"];
    config.frameCount = Get(c, "frames", 100);
    config.frameRateHz = Get(c, "rate_hz", 10.0);
  }

  config.seed = Get(doc, "seed", static_cast<std::uint64_t>(0));
  if (doc.contains("output")) {
    std::filesystem::path out = doc["output"].get<std::string>();
    if (out.is_relative()) {
      if (const char* root = std::getenv("URBANSYNTH_OUTPUT_ROOT")) out = root / out;
    }
    config.outputDir = out;
  } else {
    errs.push_back("output directory is required");
  }

  // Overrides come last so validation sees the effective values.
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.frames) config.frameCount = *overrides.frames;
  if (overrides.weather) {
    if (const auto w = WeatherFromName(*overrides.weather)) {
      config.environment.weather = *w;
    } else {
      errs.push_back("--weather '" + *overrides.weather +
                     "' unknown (allowed: sunny, cloudy, rainy, foggy)");
    }
  }
  if (overrides.timeOfDay) {
    config.environment.startHour = *overrides.timeOfDay;
    if (config.environment.startHour < 0.0 || config.environment.startHour >= 24.0)
      errs.push_back("--time-of-day must lie in [0, 24)");
  }
  if (overrides.output) config.outputDir = *overrides.output;

  if (config.frameCount <= 0) errs.push_back("capture.frames must be > 0");
  if (config.frameRateHz <= 0.0) errs.push_back("capture.rate_hz must be > 0");

  if (violations) *violations = std::move(errs);
  return config;
}

std::vector<std::string> ValidateConfigFile(const std::filesystem::path& path)
{
  std::vector<std::string> violations;
  LoadScenarioConfig(path, {}, &violations);
  return violations;
}

std::string ConfigHash(const ScenarioConfig& config)
{
  // Canonical form: key-sorted JSON of everything that affects content.
  json j;
  j["map_path"] = config.mapPath.filename().string();
  if (config.origin) j["origin"] = {config.origin->lat, config.origin->lon};
  j["rules_path"] = config.rulesPath.filename().string();
  j["census"] = {config.census.parkedCars,  config.census.parkedBuses,
                 config.census.parkedTrucks, config.census.movingCars,
                 config.census.movingBuses,  config.census.movingTrucks};
  j["moving_speed"] = config.census.movingSpeed;
  j["camera_kind"] = config.camera.kind == CameraKind::kOnboard ? "onboard" : "surveillance";
  j["intrinsics"] = {config.camera.intrinsics.width, config.camera.intrinsics.height,
                     config.camera.intrinsics.horizontalFovDeg,
                     config.camera.intrinsics.nearPlane};
  j["onboard"] = {config.camera.mountHeight, config.camera.yawOffsetDeg,
                  config.camera.hostTrajectoryId};
  j["surveillance"] = {config.camera.position.x,       config.camera.position.y,
                       config.camera.initialYawDeg,    config.camera.rotationRateDegPerSec,
                       config.camera.rotationRangeDeg, config.camera.liftRateMPerSec,
                       config.camera.liftMin,          config.camera.liftMax,
                       config.camera.pitchDeg};
  j["environment"] = {WeatherName(config.environment.weather), config.environment.startHour,
                      config.environment.hoursPerSecond, config.environment.fogDensity,
                      config.environment.ambient};
  j["props"] = {config.props.spacing,    config.props.pedestrians, config.props.cyclists,
                config.props.chairs,     config.props.billboards,  config.props.fences,
                config.props.trafficControl};
  j["annotations"] = {config.annotationRules.minWidth, config.annotationRules.minHeight,
                      config.annotationRules.occlusionThreshold};
  j["capture"] = {config.frameCount, config.frameRateHz};
  j["seed"] = config.seed;

  const std::string canonical = j.dump();
  const std::uint64_t h = fnv1a64(canonical.data(), canonical.size());
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace usynth

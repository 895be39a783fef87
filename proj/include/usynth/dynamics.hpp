#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "usynth/geometry.hpp"

namespace usynth {

// Scripted motion along a lane path at constant speed. Positions clamp at the
// path end; there is deliberately no car-following model.
struct Trajectory {
  Polyline2 lanePath;
  double startOffset = 0.0;  // meters along the path at startTime
  double speed = 0.0;        // m/s
  double startTime = 0.0;
  double endTime = 0.0;
  std::uint32_t vehicleTemplateId = 0;
  bool parked = false;

  double PathLength() const { return PolylineLength(lanePath); }
};

struct VehiclePose {
  Vec3 position;  // z = 0, on the ground plane
  double yaw = 0.0;
};

// Pose at time t, or nullopt outside [startTime, endTime].
std::optional<VehiclePose> PoseAt(const Trajectory& traj, double t);

enum class CameraKind { kOnboard, kSurveillance };

struct CameraIntrinsicsConfig {
  int width = 500;
  int height = 375;
  double horizontalFovDeg = 60.0;
  double nearPlane = 0.5;
};

struct CameraRig {
  CameraKind kind = CameraKind::kOnboard;
  CameraIntrinsicsConfig intrinsics;

  // Onboard: raised from the host vehicle roof line.
  double mountHeight = 2.0;
  double yawOffsetDeg = 0.0;
  std::uint32_t hostTrajectoryId = 0;

  // Surveillance: fixed position, triangular yaw sweep plus vertical lift.
  Vec2 position;
  double baseHeight = 2.0;
  double initialYawDeg = 0.0;
  double rotationRateDegPerSec = 10.0;
  double rotationRangeDeg = 180.0;
  double liftRateMPerSec = 0.1;
  double liftMin = 2.0;
  double liftMax = 5.0;
  double pitchDeg = -10.0;
};

struct CameraPoseResult {
  Vec3 position;
  double yawRad = 0.0;
  double pitchRad = 0.0;
};

// Onboard rigs follow their host trajectory (error when the host is inactive
// at t); surveillance rigs sweep yaw and height as triangle waves, both
// running simultaneously from t = 0.
CameraPoseResult CameraPose(const CameraRig& rig, double t,
                            const std::vector<Trajectory>& trajectories);

enum class Weather { kSunny, kCloudy, kRainy, kFoggy };

std::optional<Weather> WeatherFromName(const std::string& name);
const char* WeatherName(Weather w);

struct EnvironmentState {
  Vec3 sunDirection{0.0, 0.0, 1.0};  // unit vector toward the sun
  double sunIntensity = 1.0;         // [0, 1]
  double ambientIntensity = 0.2;     // [0, 1]
  Weather weather = Weather::kSunny;
  double fogDensity = 0.0;           // 1/m, > 0 iff foggy
  double timeOfDay = 12.0;           // hours [0, 24)
};

struct EnvironmentSchedule {
  Weather weather = Weather::kSunny;
  double startHour = 12.0;
  double hoursPerSecond = 0.0;  // time-of-day advance rate
  double fogDensity = 0.03;     // used when weather == foggy
  double ambient = 0.2;
};

// Analytic sun arc: elevation 90 deg * sin(pi * (h - 6) / 12), intensity
// max(0, sin(elevation)); cloudy scales intensity by 0.4.
EnvironmentState EnvironmentAt(const EnvironmentSchedule& schedule, double t);

// Triangle wave in [0, range] with |slope| = rate, starting at 0 going up.
double TriangleSweep(double t, double rate, double range);

}  // namespace usynth

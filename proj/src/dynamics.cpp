#include "usynth/dynamics.hpp"

#include <cmath>

#include "usynth/error.hpp"

namespace usynth {

std::optional<VehiclePose> PoseAt(const Trajectory& traj, double t)
{
  if (t < traj.startTime || t > traj.endTime) return std::nullopt;
  const double s = traj.startOffset + traj.speed * (t - traj.startTime);
  const Vec2 p = PointAtArcLength(traj.lanePath, s);
  const Vec2 d = TangentAtArcLength(traj.lanePath, s);
  return VehiclePose{{p.x, p.y, 0.0}, std::atan2(d.y, d.x)};
}

double TriangleSweep(double t, double rate, double range)
{
  if (rate <= 0.0 || range <= 0.0) return 0.0;
  const double period = 2.0 * range / rate;
  double phase = std::fmod(t, period);
  if (phase < 0.0) phase += period;
  const double up = phase * rate;
  return up <= range ? up : 2.0 * range - up;
}

CameraPoseResult CameraPose(const CameraRig& rig, double t,
                            const std::vector<Trajectory>& trajectories)
{
  CameraPoseResult out;
  if (rig.kind == CameraKind::kOnboard) {
    if (rig.hostTrajectoryId >= trajectories.size())
      throw ValidationError("onboard camera host trajectory " +
                            std::to_string(rig.hostTrajectoryId) + " does not exist");
    const auto pose = PoseAt(trajectories[rig.hostTrajectoryId], t);
    if (!pose)
      throw ValidationError("onboard camera host trajectory is inactive at t = " +
                            std::to_string(t));
    out.position = pose->position + Vec3{0.0, 0.0, rig.mountHeight};
    out.yawRad = pose->yaw + DegToRad(rig.yawOffsetDeg);
    out.pitchRad = 0.0;
    return out;
  }

  const double yawSweep = TriangleSweep(t, rig.rotationRateDegPerSec, rig.rotationRangeDeg);
  const double lift = TriangleSweep(t, rig.liftRateMPerSec, rig.liftMax - rig.liftMin);
  out.position = {rig.position.x, rig.position.y, rig.liftMin + lift};
  out.yawRad = DegToRad(rig.initialYawDeg + yawSweep);
  out.pitchRad = DegToRad(rig.pitchDeg);
  return out;
}

std::optional<Weather> WeatherFromName(const std::string& name)
{
  if (name == "sunny") return Weather::kSunny;
  if (name == "cloudy") return Weather::kCloudy;
  if (name == "rainy") return Weather::kRainy;
  if (name == "foggy") return Weather::kFoggy;
  return std::nullopt;
}

const char* WeatherName(Weather w)
{
  switch (w) {
    case Weather::kSunny: return "sunny";
    case Weather::kCloudy: return "cloudy";
    case Weather::kRainy: return "rainy";
    case Weather::kFoggy: return "foggy";
  }
  return "sunny";
}

EnvironmentState EnvironmentAt(const EnvironmentSchedule& schedule, double t)
{
  EnvironmentState env;
  env.weather = schedule.weather;
  env.ambientIntensity = schedule.ambient;

  double hour = std::fmod(schedule.startHour + schedule.hoursPerSecond * t, 24.0);
  if (hour < 0.0) hour += 24.0;
  env.timeOfDay = hour;

  const double elevationRad = DegToRad(90.0) * std::sin(kPi * (hour - 6.0) / 12.0);
  env.sunIntensity = std::max(0.0, std::sin(elevationRad));
  if (env.weather == Weather::kCloudy) env.sunIntensity *= 0.4;

  // Azimuth sweeps east (06:00) through south (12:00) to west (18:00).
  const double azimuth = -kPi * (hour - 6.0) / 12.0;
  env.sunDirection = Normalized(Vec3{std::cos(elevationRad) * std::cos(azimuth),
                                     std::cos(elevationRad) * std::sin(azimuth),
                                     std::sin(elevationRad)});

  env.fogDensity = env.weather == Weather::kFoggy ? schedule.fogDensity : 0.0;
  return env;
}

}  // namespace usynth

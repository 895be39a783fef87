#pragma once

#include <optional>

#include "usynth/dynamics.hpp"
#include "usynth/geometry.hpp"

namespace usynth {

// Pinhole camera. Camera space: x right, y down (image v grows downward),
// z forward. No far plane.
struct Camera {
  Vec3 position;
  Vec3 right{0.0, -1.0, 0.0};
  Vec3 down{0.0, 0.0, -1.0};
  Vec3 forward{1.0, 0.0, 0.0};
  double fpx = 0.0;  // focal length in pixels: (width / 2) / tan(fov / 2)
  double cx = 0.0;
  double cy = 0.0;
  double nearPlane = 0.5;
  int width = 0;
  int height = 0;

  static Camera Make(const Vec3& position, double yawRad, double pitchRad,
                     const CameraIntrinsicsConfig& intr)
  {
    Camera cam;
    cam.position = position;
    const double cp = std::cos(pitchRad), sp = std::sin(pitchRad);
    cam.forward = {cp * std::cos(yawRad), cp * std::sin(yawRad), sp};
    cam.right = Normalized(Cross(cam.forward, Vec3{0.0, 0.0, 1.0}));
    cam.down = Cross(cam.forward, cam.right);
    cam.width = intr.width;
    cam.height = intr.height;
    cam.fpx = (intr.width / 2.0) / std::tan(DegToRad(intr.horizontalFovDeg) / 2.0);
    cam.cx = intr.width / 2.0;
    cam.cy = intr.height / 2.0;
    cam.nearPlane = intr.nearPlane;
    return cam;
  }

  static Camera FromPose(const CameraPoseResult& pose, const CameraIntrinsicsConfig& intr)
  {
    return Make(pose.position, pose.yawRad, pose.pitchRad, intr);
  }

  Vec3 ToCamera(const Vec3& world) const
  {
    const Vec3 d = world - position;
    return {Dot(d, right), Dot(d, down), Dot(d, forward)};
  }

  struct Projection {
    double u, v, z;
  };

  // Perspective projection; nullopt for points at or behind the near plane.
  std::optional<Projection> Project(const Vec3& world) const
  {
    const Vec3 c = ToCamera(world);
    if (c.z <= nearPlane) return std::nullopt;
    return Projection{cx + fpx * c.x / c.z, cy + fpx * c.y / c.z, c.z};
  }
};

}  // namespace usynth

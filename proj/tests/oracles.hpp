#pragma once

// Brute-force reference implementations, independent of the library's
// rasterization path. Deliberately simple: per pixel, test every triangle.

#include <cmath>
#include <limits>
#include <vector>

#include "usynth/camera.hpp"
#include "usynth/mesh.hpp"

namespace oracle {

struct ScreenTri {
  double x[3], y[3], z[3];
};

// Projects mesh triangles that lie fully in front of the near plane.
inline std::vector<ScreenTri> ProjectTriangles(const usynth::Mesh& mesh,
                                               const usynth::Camera& cam)
{
  std::vector<ScreenTri> out;
  for (const auto& tri : mesh.triangles) {
    ScreenTri st;
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      const auto p = cam.Project(mesh.vertices[tri[k]]);
      if (!p) {
        ok = false;
        break;
      }
      st.x[k] = p->u;
      st.y[k] = p->v;
      st.z[k] = p->z;
    }
    if (ok) out.push_back(st);
  }
  return out;
}

// Coverage at a point, including boundary ownership by top/left edges. Same
// convention as the renderer contract, written from scratch.
inline bool Covers(const ScreenTri& t, double px, double py, double* zOut)
{
  double x0 = t.x[0], y0 = t.y[0], z0 = t.z[0];
  double x1 = t.x[1], y1 = t.y[1], z1 = t.z[1];
  double x2 = t.x[2], y2 = t.y[2], z2 = t.z[2];
  double area = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0);
  if (area == 0.0) return false;
  if (area < 0.0) {
    std::swap(x1, x2);
    std::swap(y1, y2);
    std::swap(z1, z2);
    area = -area;
  }
  const double xs[3] = {x0, x1, x2}, ys[3] = {y0, y1, y2}, zs[3] = {z0, z1, z2};
  double edge[3];
  for (int e = 0; e < 3; ++e) {
    const int a = e, b = (e + 1) % 3;
    const double dx = xs[b] - xs[a], dy = ys[b] - ys[a];
    const double val = dx * (py - ys[a]) - dy * (px - xs[a]);
    if (val < 0.0) return false;
    if (val == 0.0 && !(dy < 0.0 || (dy == 0.0 && dx > 0.0))) return false;
    edge[e] = val;
  }
  // Perspective-correct depth from area-normalized barycentrics.
  const double b0 = edge[1] / area, b1 = edge[2] / area, b2 = edge[0] / area;
  const double invZ = b0 / zs[0] + b1 / zs[1] + b2 / zs[2];
  *zOut = 1.0 / invZ;
  return true;
}

// Per-pixel nearest depth over all triangles; +inf where nothing covers.
inline std::vector<double> DepthMap(const std::vector<ScreenTri>& tris, int width, int height)
{
  std::vector<double> depth(static_cast<std::size_t>(width) * height,
                            std::numeric_limits<double>::infinity());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (const ScreenTri& t : tris) {
        double z = 0.0;
        if (Covers(t, x + 0.5, y + 0.5, &z)) best = std::min(best, z);
      }
      depth[static_cast<std::size_t>(y) * width + x] = best;
    }
  }
  return depth;
}

inline int CoverageCount(const ScreenTri& tri, int width, int height)
{
  int count = 0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double z = 0.0;
      if (Covers(tri, x + 0.5, y + 0.5, &z)) ++count;
    }
  }
  return count;
}

}  // namespace oracle

#include "usynth/rasterizer.hpp"

#include <algorithm>
#include <cmath>

#include "usynth/parallel.hpp"

namespace usynth {

namespace {

constexpr int kTileSize = 64;

struct PreparedTri {
  double vx[3], vy[3];   // screen coordinates
  double invZ[3];
  Vec3 wOverZ[3];        // world position / camera z
  Vec3 normal;           // unit, oriented toward the camera
  Vec3 albedo;
  std::uint8_t classId = 0;
  std::uint32_t instanceId = 0;
  std::uint32_t nodeIndex = 0;
  double minX, minY, maxX, maxY;
};

struct ClipVert {
  Vec3 world;
  Vec3 cam;
};

// Sutherland-Hodgman clip of a camera-space triangle against z >= near.
// Returns the vertex count (0, 3, or 4).
int ClipNear(const ClipVert in[3], ClipVert out[4], double near)
{
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const ClipVert& cur = in[i];
    const ClipVert& nxt = in[(i + 1) % 3];
    const double dc = cur.cam.z - near;
    const double dn = nxt.cam.z - near;
    if (dc >= 0.0) out[n++] = cur;
    if ((dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0)) {
      const double t = dc / (dc - dn);
      out[n++] = ClipVert{cur.world + (nxt.world - cur.world) * t,
                          cur.cam + (nxt.cam - cur.cam) * t};
    }
  }
  return n;
}

// Pixel-center coverage: strictly positive edge functions, with boundary
// pixels owned by top (horizontal, dx > 0) and left (dy < 0) edges.
inline bool EdgeAccepts(double e, double dx, double dy)
{
  if (e > 0.0) return true;
  if (e < 0.0) return false;
  return dy < 0.0 || (dy == 0.0 && dx > 0.0);
}

void AppendNodeTriangles(const RenderNode& node, const Camera& cam,
                         std::vector<PreparedTri>& out)
{
  const Mesh& mesh = *node.mesh;
  std::vector<Vec3> world(mesh.vertices.size());
  std::vector<Vec3> camSpace(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    world[i] = node.pose.Apply(mesh.vertices[i]);
    camSpace[i] = cam.ToCamera(world[i]);
  }

  const double w = cam.width, h = cam.height;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    ClipVert verts[3] = {{world[tri[0]], camSpace[tri[0]]},
                         {world[tri[1]], camSpace[tri[1]]},
                         {world[tri[2]], camSpace[tri[2]]}};
    if (verts[0].cam.z < cam.nearPlane && verts[1].cam.z < cam.nearPlane &&
        verts[2].cam.z < cam.nearPlane)
      continue;

    Vec3 normal = Cross(verts[1].world - verts[0].world, verts[2].world - verts[0].world);
    const double nLen = Length(normal);
    if (nLen == 0.0) continue;
    normal = normal * (1.0 / nLen);
    const Vec3 centroid = (verts[0].world + verts[1].world + verts[2].world) * (1.0 / 3.0);
    if (Dot(normal, centroid - cam.position) > 0.0) normal = normal * -1.0;

    ClipVert clipped[4];
    const int n = ClipNear(verts, clipped, cam.nearPlane);
    if (n < 3) continue;

    for (int f = 1; f + 1 < n; ++f) {
      const ClipVert* v[3] = {&clipped[0], &clipped[f], &clipped[f + 1]};
      PreparedTri p;
      bool degenerate = false;
      for (int k = 0; k < 3; ++k) {
        const double z = v[k]->cam.z;
        if (z <= 0.0) {
          degenerate = true;
          break;
        }
        p.vx[k] = cam.cx + cam.fpx * v[k]->cam.x / z;
        p.vy[k] = cam.cy + cam.fpx * v[k]->cam.y / z;
        p.invZ[k] = 1.0 / z;
        p.wOverZ[k] = v[k]->world * p.invZ[k];
      }
      if (degenerate) continue;

      const double area2 = (p.vx[1] - p.vx[0]) * (p.vy[2] - p.vy[0]) -
                           (p.vy[1] - p.vy[0]) * (p.vx[2] - p.vx[0]);
      if (area2 == 0.0) continue;
      if (area2 < 0.0) {
        std::swap(p.vx[1], p.vx[2]);
        std::swap(p.vy[1], p.vy[2]);
        std::swap(p.invZ[1], p.invZ[2]);
        std::swap(p.wOverZ[1], p.wOverZ[2]);
      }

      p.minX = std::min({p.vx[0], p.vx[1], p.vx[2]});
      p.maxX = std::max({p.vx[0], p.vx[1], p.vx[2]});
      p.minY = std::min({p.vy[0], p.vy[1], p.vy[2]});
      p.maxY = std::max({p.vy[0], p.vy[1], p.vy[2]});
      if (p.maxX < 0.0 || p.minX > w || p.maxY < 0.0 || p.minY > h) continue;

      p.normal = normal;
      const Color& c = mesh.triAlbedo[t];
      p.albedo = {c.r, c.g, c.b};
      p.classId = static_cast<std::uint8_t>(mesh.triClass[t]);
      p.instanceId = mesh.instanceId;
      out.push_back(p);
    }
  }
}

struct PixelRange {
  int x0, x1, y0, y1;  // half-open
};

PixelRange BboxPixels(const PreparedTri& t, int clampX0, int clampY0, int clampX1, int clampY1)
{
  PixelRange r;
  r.x0 = std::max(clampX0, static_cast<int>(std::floor(t.minX - 0.5)));
  r.y0 = std::max(clampY0, static_cast<int>(std::floor(t.minY - 0.5)));
  r.x1 = std::min(clampX1, static_cast<int>(std::ceil(t.maxX + 0.5)));
  r.y1 = std::min(clampY1, static_cast<int>(std::ceil(t.maxY + 0.5)));
  return r;
}

template <typename PixelFn>
void RasterTriangle(const PreparedTri& t, const PixelRange& range, PixelFn&& fn)
{
  const double e01dx = t.vx[1] - t.vx[0], e01dy = t.vy[1] - t.vy[0];
  const double e12dx = t.vx[2] - t.vx[1], e12dy = t.vy[2] - t.vy[1];
  const double e20dx = t.vx[0] - t.vx[2], e20dy = t.vy[0] - t.vy[2];
  const double area2 = e01dx * (t.vy[2] - t.vy[0]) - e01dy * (t.vx[2] - t.vx[0]);
  const double invArea2 = 1.0 / area2;

  for (int py = range.y0; py < range.y1; ++py) {
    const double pcy = py + 0.5;
    for (int px = range.x0; px < range.x1; ++px) {
      const double pcx = px + 0.5;
      const double e01 = e01dx * (pcy - t.vy[0]) - e01dy * (pcx - t.vx[0]);
      if (!EdgeAccepts(e01, e01dx, e01dy)) continue;
      const double e12 = e12dx * (pcy - t.vy[1]) - e12dy * (pcx - t.vx[1]);
      if (!EdgeAccepts(e12, e12dx, e12dy)) continue;
      const double e20 = e20dx * (pcy - t.vy[2]) - e20dy * (pcx - t.vx[2]);
      if (!EdgeAccepts(e20, e20dx, e20dy)) continue;
      // Barycentrics: weight of vertex k comes from the opposite edge.
      const double b0 = e12 * invArea2;
      const double b1 = e20 * invArea2;
      const double b2 = e01 * invArea2;
      fn(px, py, b0, b1, b2);
    }
  }
}

}  // namespace

void Rasterize(const std::vector<RenderNode>& nodes, const Camera& cam, GBuffer& out, int threads)
{
  out.Reset(cam.width, cam.height);

  // Triangle preparation runs per node; the flattened list preserves node
  // order so depth ties resolve identically for any thread count.
  std::vector<std::vector<PreparedTri>> perNode(nodes.size());
  ParallelFor(static_cast<std::int64_t>(nodes.size()), threads, [&](std::int64_t i) {
    AppendNodeTriangles(nodes[i], cam, perNode[i]);
    for (PreparedTri& t : perNode[i]) t.nodeIndex = static_cast<std::uint32_t>(i);
  });

  std::size_t total = 0;
  for (const auto& v : perNode) total += v.size();
  std::vector<PreparedTri> tris;
  tris.reserve(total);
  for (auto& v : perNode) tris.insert(tris.end(), v.begin(), v.end());

  const int tilesX = (cam.width + kTileSize - 1) / kTileSize;
  const int tilesY = (cam.height + kTileSize - 1) / kTileSize;
  std::vector<std::vector<std::uint32_t>> bins(static_cast<std::size_t>(tilesX) * tilesY);
  for (std::uint32_t i = 0; i < tris.size(); ++i) {
    const PreparedTri& t = tris[i];
    const int tx0 = std::max(0, static_cast<int>(t.minX) / kTileSize);
    const int ty0 = std::max(0, static_cast<int>(t.minY) / kTileSize);
    const int tx1 = std::min(tilesX - 1, static_cast<int>(t.maxX) / kTileSize);
    const int ty1 = std::min(tilesY - 1, static_cast<int>(t.maxY) / kTileSize);
    for (int ty = ty0; ty <= ty1; ++ty)
      for (int tx = tx0; tx <= tx1; ++tx)
        bins[static_cast<std::size_t>(ty) * tilesX + tx].push_back(i);
  }

  ParallelFor(static_cast<std::int64_t>(bins.size()), threads, [&](std::int64_t tileIdx) {
    const int tx = static_cast<int>(tileIdx) % tilesX;
    const int ty = static_cast<int>(tileIdx) / tilesX;
    const int x0 = tx * kTileSize, y0 = ty * kTileSize;
    const int x1 = std::min(cam.width, x0 + kTileSize);
    const int y1 = std::min(cam.height, y0 + kTileSize);
    for (const std::uint32_t idx : bins[tileIdx]) {
      const PreparedTri& t = tris[idx];
      const PixelRange range = BboxPixels(t, x0, y0, x1, y1);
      RasterTriangle(t, range, [&](int px, int py, double b0, double b1, double b2) {
        const std::size_t p = static_cast<std::size_t>(py) * cam.width + px;
        const double invZ = b0 * t.invZ[0] + b1 * t.invZ[1] + b2 * t.invZ[2];
        const double z = 1.0 / invZ;
        if (z >= out.depth[p]) return;  // strict: first triangle wins ties
        out.depth[p] = z;
        out.worldPos[p] = (t.wOverZ[0] * b0 + t.wOverZ[1] * b1 + t.wOverZ[2] * b2) * z;
        out.classId[p] = t.classId;
        out.instanceId[p] = t.instanceId;
        out.nodeIndex[p] = t.nodeIndex;
        out.albedo[p] = t.albedo;
        out.normal[p] = t.normal;
      });
    }
  });
}

int SoloCoverageCounter::Count(const Mesh& mesh, const NodePose& pose, const Camera& cam)
{
  const std::size_t pixels = static_cast<std::size_t>(cam.width) * cam.height;
  if (stamp_.size() < pixels) stamp_.assign(pixels, 0);
  ++generation_;
  if (generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    generation_ = 1;
  }

  RenderNode node;
  node.mesh = &mesh;
  node.pose = pose;
  std::vector<PreparedTri> tris;
  AppendNodeTriangles(node, cam, tris);

  int count = 0;
  for (const PreparedTri& t : tris) {
    const PixelRange range = BboxPixels(t, 0, 0, cam.width, cam.height);
    RasterTriangle(t, range, [&](int px, int py, double, double, double) {
      const std::size_t p = static_cast<std::size_t>(py) * cam.width + px;
      if (stamp_[p] == generation_) return;
      stamp_[p] = generation_;
      ++count;
    });
  }
  return count;
}

}  // namespace usynth

#include <algorithm>
#include <cmath>

#include "usynth/error.hpp"
#include "usynth/rng.hpp"
#include "usynth/rules.hpp"

namespace usynth {

namespace {

constexpr int kMaxDepth = 64;

// Derivation state. The footprint lives in a local frame aligned with its
// longest edge so split(x)/split(y) cut along the lot's natural axes.
struct Scope {
  Polygon2 poly;  // frame coordinates, counterclockwise
  double z0 = 0.0;
  double height = 0.0;
  Color albedo{0.78, 0.76, 0.72};
  ClassId cls = ClassId::kBuilding;
  std::uint64_t derivId = 1;
};

struct Frame {
  Vec2 origin;
  double angle = 0.0;  // frame x-axis direction in world

  Vec2 ToWorld(Vec2 p) const
  {
    const double c = std::cos(angle), s = std::sin(angle);
    return {origin.x + c * p.x - s * p.y, origin.y + s * p.x + c * p.y};
  }
  Vec2 ToFrame(Vec2 p) const
  {
    const double c = std::cos(angle), s = std::sin(angle);
    const Vec2 d = p - origin;
    return {c * d.x + s * d.y, -s * d.x + c * d.y};
  }
};

Frame FootprintFrame(const Polygon2& footprint)
{
  Frame frame;
  frame.origin = PolygonCentroid(footprint);
  double bestLen = -1.0;
  for (std::size_t i = 0; i < footprint.size(); ++i) {
    const Vec2 d = footprint[(i + 1) % footprint.size()] - footprint[i];
    const double len = Length(d);
    if (len > bestLen) {
      bestLen = len;
      frame.angle = std::atan2(d.y, d.x);
    }
  }
  return frame;
}

class Derivation {
 public:
  Derivation(const RuleProgram& program, const Polygon2& footprint, std::uint64_t seed)
      : program_(program), seed_(seed), frame_(FootprintFrame(footprint))
  {
    Scope root;
    for (const Vec2 p : footprint) root.poly.push_back(frame_.ToFrame(p));
    if (!IsCounterClockwise(root.poly)) std::reverse(root.poly.begin(), root.poly.end());
    root_ = std::move(root);
  }

  Mesh Run()
  {
    RunSymbol(program_.axiom, root_, 0);
    return builder_.Take();
  }

 private:
  void RunSymbol(const std::string& name, const Scope& scope, int depth)
  {
    if (name == "NIL") return;
    if (depth > kMaxDepth)
      throw ValidationError("rule recursion exceeded depth 64 at '" + name +
                            "' (non-terminating grammar?)");
    const auto it = program_.rules.find(name);
    if (it == program_.rules.end())
      throw ValidationError("undefined rule '" + name + "'");
    const std::vector<Production>& prods = it->second;

    const Production* chosen = &prods.front();
    if (prods.size() > 1) {
      const double r = RandUnit(seed_, scope.derivId, "production"_tag);
      double acc = 0.0;
      for (const Production& p : prods) {
        acc += p.weight.value_or(0.0);
        if (r < acc) {
          chosen = &p;
          break;
        }
        chosen = &p;  // numeric tail: last production absorbs the remainder
      }
    }
    RunOps(name, chosen->ops, scope, depth);
  }

  void RunOps(const std::string& ruleName, const std::vector<ShapeOp>& ops, Scope scope,
              int depth)
  {
    std::uint64_t childOrdinal = 0;
    for (const ShapeOp& op : ops) {
      switch (op.kind) {
        case ShapeOp::Kind::kExtrude:
          scope.height = op.extrudeHeight;
          break;
        case ShapeOp::Kind::kColor:
          scope.albedo = op.color;
          break;
        case ShapeOp::Kind::kClass:
          scope.cls = op.classId;
          break;
        case ShapeOp::Kind::kCall: {
          Scope child = scope;
          child.derivId = Mix64(HashCombine(scope.derivId, ++childOrdinal));
          RunSymbol(op.symbol, child, depth + 1);
          break;
        }
        case ShapeOp::Kind::kSetback: {
          Scope child = scope;
          child.poly = InsetConvexPolygon(scope.poly, op.setbackDistance);
          child.derivId = Mix64(HashCombine(scope.derivId, ++childOrdinal));
          if (!child.poly.empty()) RunSymbol(op.symbol, child, depth + 1);
          break;
        }
        case ShapeOp::Kind::kChoose: {
          const double r =
              RandUnit(seed_, scope.derivId, HashCombine("choose"_tag, ++childOrdinal));
          double acc = 0.0;
          const WeightedBranch* branch = &op.branches.front();
          for (const WeightedBranch& b : op.branches) {
            acc += b.weight;
            branch = &b;
            if (r < acc) break;
          }
          Scope child = scope;
          child.derivId = Mix64(HashCombine(scope.derivId, childOrdinal));
          RunOps(ruleName, branch->ops, child, depth + 1);
          break;
        }
        case ShapeOp::Kind::kSplit:
          SplitScope(ruleName, op, scope, depth, ++childOrdinal);
          break;
        case ShapeOp::Kind::kRepeat:
          RepeatScope(op, scope, depth, ++childOrdinal);
          break;
        case ShapeOp::Kind::kPrimitive:
          EmitPrimitive(op.primitive, scope);
          break;
      }
    }
  }

  double AxisExtent(const Scope& scope, Axis axis, double* lo) const
  {
    if (axis == Axis::kZ) {
      *lo = scope.z0;
      return scope.height;
    }
    const Aabb2 b = PolygonBounds(scope.poly);
    *lo = axis == Axis::kX ? b.min.x : b.min.y;
    const Vec2 e = b.Extent();
    return axis == Axis::kX ? e.x : e.y;
  }

  Scope SliceScope(const Scope& scope, Axis axis, double from, double to) const
  {
    Scope child = scope;
    if (axis == Axis::kZ) {
      child.z0 = from;
      child.height = to - from;
      return child;
    }
    const Vec2 dir = axis == Axis::kX ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
    child.poly = ClipPolygonHalfPlane(scope.poly, dir, from, /*keepBelow=*/false);
    if (!child.poly.empty())
      child.poly = ClipPolygonHalfPlane(child.poly, dir, to, /*keepBelow=*/true);
    return child;
  }

  void SplitScope(const std::string& ruleName, const ShapeOp& op, const Scope& scope, int depth,
                  std::uint64_t ordinal)
  {
    double lo = 0.0;
    const double extent = AxisExtent(scope, op.axis, &lo);

    double fixedSum = 0.0, flexSum = 0.0;
    for (const SplitPart& p : op.parts) (p.flexible ? flexSum : fixedSum) += p.value;
    if (fixedSum > extent + 1e-9)
      throw ValidationError("split sizes in rule '" + ruleName + "' exceed the parent extent (" +
                            std::to_string(fixedSum) + " > " + std::to_string(extent) + ")");
    const double leftover = std::max(0.0, extent - fixedSum);

    double cursor = lo;
    std::uint64_t childIndex = 0;
    for (const SplitPart& p : op.parts) {
      const double size = p.flexible ? (flexSum > 0.0 ? leftover * p.value / flexSum : 0.0)
                                     : p.value;
      if (size <= 0.0) {
        ++childIndex;
        continue;
      }
      Scope child = SliceScope(scope, op.axis, cursor, cursor + size);
      cursor += size;
      ++childIndex;
      if (op.axis != Axis::kZ && child.poly.empty()) continue;
      child.derivId = Mix64(HashCombine(scope.derivId, HashCombine(ordinal, childIndex)));
      RunSymbol(p.symbol, child, depth + 1);
    }
  }

  void RepeatScope(const ShapeOp& op, const Scope& scope, int depth, std::uint64_t ordinal)
  {
    double lo = 0.0;
    const double extent = AxisExtent(scope, op.axis, &lo);
    if (extent <= 0.0) return;
    const int n = std::max(1, static_cast<int>(std::floor(extent / op.repeatSize + 0.5)));
    const double step = extent / n;
    for (int i = 0; i < n; ++i) {
      Scope child = SliceScope(scope, op.axis, lo + i * step, lo + (i + 1) * step);
      if (op.axis != Axis::kZ && child.poly.empty()) continue;
      child.derivId =
          Mix64(HashCombine(scope.derivId, HashCombine(ordinal, static_cast<std::uint64_t>(i))));
      RunSymbol(op.symbol, child, depth + 1);
    }
  }

  void EmitPrimitive(PrimitiveKind kind, const Scope& scope)
  {
    if (scope.poly.size() < 3) return;
    Polygon2 world;
    world.reserve(scope.poly.size());
    for (const Vec2 p : scope.poly) world.push_back(frame_.ToWorld(p));
    if (!IsCounterClockwise(world)) std::reverse(world.begin(), world.end());

    switch (kind) {
      case PrimitiveKind::kBox:
        builder_.AddPrism(world, scope.z0, scope.height, scope.cls, scope.albedo);
        break;
      case PrimitiveKind::kQuad:
        builder_.AddPrism(world, scope.z0, 0.0, scope.cls, scope.albedo);
        break;
      case PrimitiveKind::kCylinder: {
        const Aabb2 b = PolygonBounds(world);
        const Vec2 e = b.Extent();
        const Vec2 c = PolygonCentroid(world);
        builder_.AddCylinder(c, scope.z0, std::min(e.x, e.y) / 2.0, scope.height, 16, scope.cls,
                             scope.albedo);
        break;
      }
      case PrimitiveKind::kCone: {
        const Aabb2 b = PolygonBounds(world);
        const Vec2 e = b.Extent();
        const Vec2 c = PolygonCentroid(world);
        builder_.AddCone(c, scope.z0, std::min(e.x, e.y) / 2.0, scope.height, 16, scope.cls,
                         scope.albedo);
        break;
      }
    }
  }

  const RuleProgram& program_;
  std::uint64_t seed_;
  Frame frame_;
  Scope root_;
  MeshBuilder builder_;
};

}  // namespace

Mesh ApplyRules(const RuleProgram& program, const Polygon2& footprint, std::uint64_t seed)
{
  if (footprint.size() < 3) throw ValidationError("footprint needs at least 3 vertices");
  Derivation derivation(program, footprint, seed);
  return derivation.Run();
}

}  // namespace usynth

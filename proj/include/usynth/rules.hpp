#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "usynth/mesh.hpp"

namespace usynth {

// A small shape-grammar language for procedural architecture. A program is a
// set of named rules; executing the axiom over a lot polygon derives a mesh.
//
//   Lot --> setback(1.5){ Mass }
//   Mass --> extrude(18) repeat(z, 3.0, Floor)
//   Floor --> split(x){ 2: Pier, ~1: Window, 2: Pier }
//   Window --> color(0.35, 0.5, 0.65) class(building) primitive(box)
//   Pier --> color(0.8, 0.78, 0.75) class(building) primitive(box)
//
// One rule per line, `#` starts a comment. A rule name may appear on several
// lines with probability weights ("Sym --> 0.3: ...") that must sum to 1.
// `NIL` is the built-in empty terminal.

enum class Axis { kX, kY, kZ };

enum class PrimitiveKind { kBox, kCylinder, kCone, kQuad };

struct ShapeOp;

struct SplitPart {
  bool flexible = false;  // ~weight shares the leftover extent
  double value = 0.0;     // absolute size, or weight when flexible
  std::string symbol;
};

struct WeightedBranch {
  double weight = 0.0;
  std::vector<ShapeOp> ops;
};

struct ShapeOp {
  enum class Kind { kExtrude, kSplit, kRepeat, kSetback, kColor, kClass, kChoose, kPrimitive, kCall };
  Kind kind;

  double extrudeHeight = 0.0;            // kExtrude
  Axis axis = Axis::kX;                  // kSplit, kRepeat
  std::vector<SplitPart> parts;          // kSplit
  double repeatSize = 0.0;               // kRepeat
  std::string symbol;                    // kRepeat, kSetback, kCall
  double setbackDistance = 0.0;          // kSetback
  Color color;                           // kColor
  ClassId classId = ClassId::kBuilding;  // kClass
  std::vector<WeightedBranch> branches;  // kChoose
  PrimitiveKind primitive = PrimitiveKind::kBox;  // kPrimitive
};

struct Production {
  std::optional<double> weight;
  std::vector<ShapeOp> ops;
};

struct RuleProgram {
  // Rule order as written; the first rule is the axiom.
  std::vector<std::string> ruleOrder;
  std::map<std::string, std::vector<Production>> rules;
  std::string axiom;
};

// Compiles rule text. Throws ParseError (line/column) on syntax errors,
// unknown operations, weights not summing to 1, or undefined non-terminals.
RuleProgram ParseRules(const std::string& source);

RuleProgram ParseRulesFile(const std::string& path);

// Derives a mesh from the axiom over the footprint. Deterministic in
// (program, footprint, seed): stochastic branches draw from a counter-based
// generator keyed by the seed and the derivation path. Throws on recursion
// deeper than 64 and on split sizes exceeding the parent extent.
Mesh ApplyRules(const RuleProgram& program, const Polygon2& footprint, std::uint64_t seed);

}  // namespace usynth

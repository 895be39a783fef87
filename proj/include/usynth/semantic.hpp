#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace usynth {

// The fixed 15-class palette of traffic-scene elements. Ids and names are
// compile-time constants; everything downstream (shaders, encoders, the
// manifest) indexes by ClassId.
enum class ClassId : std::uint8_t {
  kSky = 0,
  kBuilding = 1,
  kCar = 2,
  kRoad = 3,
  kSidewalk = 4,
  kVegetation = 5,
  kFence = 6,
  kTrafficSign = 7,
  kTrafficLight = 8,
  kLampPole = 9,
  kBillboard = 10,
  kTree = 11,
  kCyclist = 12,
  kPedestrian = 13,
  kChair = 14,
};

constexpr int kClassCount = 15;

struct Rgb8 {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb8&) const = default;
};

struct SemanticClass {
  ClassId id;
  std::string_view name;
  Rgb8 paletteColor;
};

const std::array<SemanticClass, kClassCount>& SemanticClasses();

std::string_view ClassName(ClassId id);
Rgb8 PaletteColor(ClassId id);
std::optional<ClassId> ClassFromName(std::string_view name);

// Only these classes carry instance ids and receive detection/tracking boxes.
constexpr bool IsAnnotatable(ClassId id)
{
  return id == ClassId::kCar || id == ClassId::kCyclist || id == ClassId::kPedestrian;
}

}  // namespace usynth

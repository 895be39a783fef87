#include "usynth/semantic.hpp"

namespace usynth {

namespace {

constexpr std::array<SemanticClass, kClassCount> kClasses = {{
    {ClassId::kSky, "sky", {70, 130, 180}},
    {ClassId::kBuilding, "building", {70, 70, 70}},
    {ClassId::kCar, "car", {0, 0, 142}},
    {ClassId::kRoad, "road", {128, 64, 128}},
    {ClassId::kSidewalk, "sidewalk", {244, 35, 232}},
    {ClassId::kVegetation, "vegetation", {107, 142, 35}},
    {ClassId::kFence, "fence", {190, 153, 153}},
    {ClassId::kTrafficSign, "traffic_sign", {220, 220, 0}},
    {ClassId::kTrafficLight, "traffic_light", {250, 170, 30}},
    {ClassId::kLampPole, "lamp_pole", {153, 153, 153}},
    {ClassId::kBillboard, "billboard", {180, 165, 180}},
    {ClassId::kTree, "tree", {152, 251, 152}},
    {ClassId::kCyclist, "cyclist", {119, 11, 32}},
    {ClassId::kPedestrian, "pedestrian", {220, 20, 60}},
    {ClassId::kChair, "chair", {222, 184, 135}},
}};

}  // namespace

const std::array<SemanticClass, kClassCount>& SemanticClasses() { return kClasses; }

std::string_view ClassName(ClassId id) { return kClasses[static_cast<std::size_t>(id)].name; }

Rgb8 PaletteColor(ClassId id) { return kClasses[static_cast<std::size_t>(id)].paletteColor; }

std::optional<ClassId> ClassFromName(std::string_view name)
{
  for (const SemanticClass& c : kClasses) {
    if (c.name == name) return c.id;
  }
  return std::nullopt;
}

}  // namespace usynth

#pragma once

#include <cstdint>

#include "usynth/dynamics.hpp"
#include "usynth/gbuffer.hpp"
#include "usynth/image.hpp"

namespace usynth {

// Lambertian shading: albedo * (ambient + sunIntensity * max(0, n . s)) per
// surface pixel; sky pixels get an analytic vertical gradient scaled by sun
// intensity. Values are pre-quantization, in [0, 1].
ImageRgbF ShadeToFloat(const GBuffer& g, const EnvironmentState& env);

// ShadeToFloat clamped and quantized to 8 bits.
ImageRgb8 Shade(const GBuffer& g, const EnvironmentState& env);

// Weather post-processing on the shaded image. Fog blends toward a constant
// gray by 1 - exp(-density * z) (sky uses z = 500 m); rain darkens by 0.8 and
// overlays deterministic streaks seeded by (seed, frameIndex). Sunny and
// cloudy pass through (cloudy already attenuated the sun in EnvironmentAt).
ImageRgb8 ApplyWeather(const ImageRgb8& img, const GBuffer& g, const EnvironmentState& env,
                       std::uint64_t seed, std::uint64_t frameIndex);

}  // namespace usynth

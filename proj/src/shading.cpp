#include "usynth/shading.hpp"

#include <algorithm>
#include <cmath>

#include "usynth/error.hpp"
#include "usynth/rng.hpp"

namespace usynth {

namespace {

constexpr double kFogGray[3] = {0.75, 0.75, 0.77};
constexpr double kSkyFogDistance = 500.0;  // meters assumed for sky under fog
constexpr double kRainAttenuation = 0.8;

inline std::uint8_t Quantize8(double v)
{
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(c * 255.0));
}

}  // namespace

ImageRgbF ShadeToFloat(const GBuffer& g, const EnvironmentState& env)
{
  ImageRgbF img = ImageRgbF::Create(g.width, g.height);

  // Sky gradient: zenith blue at the top row fading toward a pale horizon.
  const double zenith[3] = {0.25, 0.45, 0.75};
  const double horizon[3] = {0.65, 0.75, 0.85};

  for (int y = 0; y < g.height; ++y) {
    const double skyT = g.height > 1 ? static_cast<double>(y) / (g.height - 1) : 0.0;
    for (int x = 0; x < g.width; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * g.width + x;
      float* out = img.Pixel(x, y);
      if (g.IsSky(p)) {
        for (int c = 0; c < 3; ++c) {
          const double base = zenith[c] * (1.0 - skyT) + horizon[c] * skyT;
          out[c] = static_cast<float>(base * env.sunIntensity);
        }
        continue;
      }
      const double lambert = std::max(0.0, Dot(g.normal[p], env.sunDirection));
      const double light = env.ambientIntensity + env.sunIntensity * lambert;
      out[0] = static_cast<float>(g.albedo[p].x * light);
      out[1] = static_cast<float>(g.albedo[p].y * light);
      out[2] = static_cast<float>(g.albedo[p].z * light);
    }
  }
  return img;
}

ImageRgb8 Shade(const GBuffer& g, const EnvironmentState& env)
{
  const ImageRgbF f = ShadeToFloat(g, env);
  ImageRgb8 img = ImageRgb8::Create(g.width, g.height);
  for (std::size_t i = 0; i < f.data.size(); ++i) img.data[i] = Quantize8(f.data[i]);
  return img;
}

ImageRgb8 ApplyWeather(const ImageRgb8& img, const GBuffer& g, const EnvironmentState& env,
                       std::uint64_t seed, std::uint64_t frameIndex)
{
  if (!img.SameSize(g.width, g.height))
    throw ValidationError("weather pass: image does not match the G-buffer dimensions");

  if (env.weather == Weather::kSunny || env.weather == Weather::kCloudy) return img;

  ImageRgb8 out = img;
  if (env.weather == Weather::kFoggy) {
    if (env.fogDensity <= 0.0) return img;
    for (std::size_t p = 0; p < g.PixelCount(); ++p) {
      const double z = g.IsSky(p) ? kSkyFogDistance : g.depth[p];
      const double f = 1.0 - std::exp(-env.fogDensity * z);
      std::uint8_t* px = &out.data[p * 3];
      for (int c = 0; c < 3; ++c) {
        const double v = px[c] / 255.0;
        px[c] = Quantize8(v * (1.0 - f) + kFogGray[c] * f);
      }
    }
    return out;
  }

  // Rain: attenuate then draw short slanted bright streaks.
  for (std::uint8_t& v : out.data)
    v = static_cast<std::uint8_t>(std::lround(v * kRainAttenuation));

  const std::uint64_t stream = HashCombine("rain"_tag, frameIndex);
  const int streaks = std::max(1, g.width * g.height / 1500);
  for (int i = 0; i < streaks; ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * 8;
    const double x0 = RandRange(seed, stream, base + 0, 0.0, g.width);
    const double y0 = RandRange(seed, stream, base + 1, 0.0, g.height);
    const double len = RandRange(seed, stream, base + 2, 6.0, 14.0);
    const double slant = RandRange(seed, stream, base + 3, -0.25, -0.05);
    const int add = 30 + static_cast<int>(RandRange(seed, stream, base + 4, 0.0, 30.0));
    for (int s = 0; s < static_cast<int>(len); ++s) {
      const int px = static_cast<int>(x0 + slant * s);
      const int py = static_cast<int>(y0 + s);
      if (px < 0 || px >= g.width || py < 0 || py >= g.height) break;
      std::uint8_t* pix = out.Pixel(px, py);
      for (int c = 0; c < 3; ++c)
        pix[c] = static_cast<std::uint8_t>(std::min(255, pix[c] + add));
    }
  }
  return out;
}

}  // namespace usynth

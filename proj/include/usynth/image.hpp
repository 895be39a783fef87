#pragma once

#include <cstdint>
#include <vector>

namespace usynth {

template <typename T, int Channels>
struct Image {
  int width = 0;
  int height = 0;
  std::vector<T> data;

  static Image Create(int w, int h, T fill = T{})
  {
    Image img;
    img.width = w;
    img.height = h;
    img.data.assign(static_cast<std::size_t>(w) * h * Channels, fill);
    return img;
  }

  T* Pixel(int x, int y) { return &data[(static_cast<std::size_t>(y) * width + x) * Channels]; }
  const T* Pixel(int x, int y) const
  {
    return &data[(static_cast<std::size_t>(y) * width + x) * Channels];
  }
  std::size_t PixelCount() const { return static_cast<std::size_t>(width) * height; }
  bool SameSize(int w, int h) const { return width == w && height == h; }

  bool operator==(const Image&) const = default;
};

using ImageRgb8 = Image<std::uint8_t, 3>;
using ImageGray8 = Image<std::uint8_t, 1>;
using ImageGray16 = Image<std::uint16_t, 1>;
using ImageRgb16 = Image<std::uint16_t, 3>;
using ImageGrayF = Image<float, 1>;
using ImageRgbF = Image<float, 3>;

}  // namespace usynth

#include "usynth/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "usynth/error.hpp"

namespace usynth {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const
  {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void WritePngImpl(const std::string& path, const void* data, int width, int height, int channels,
                  int bitDepth)
{
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw Error("cannot open for writing: " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("PNG write failed: " + path);
  }

  png_init_io(png, file.get());
  // Fixed settings: deterministic bytes and fast enough for the frame loop.
  png_set_compression_level(png, 1);
  png_set_filter(png, 0, PNG_FILTER_SUB);

  const int colorType = channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY;
  png_set_IHDR(png, info, width, height, bitDepth, colorType, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bitDepth == 16) png_set_swap(png);  // native little-endian to network order

  const std::size_t rowBytes =
      static_cast<std::size_t>(width) * channels * (bitDepth / 8);
  std::vector<png_bytep> rows(height);
  auto* base = static_cast<png_byte*>(const_cast<void*>(data));
  for (int y = 0; y < height; ++y) rows[y] = base + y * rowBytes;
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void ReadPngImpl(const std::string& path, std::vector<unsigned char>& out, int& width,
                 int& height, int expectChannels, int expectBitDepth)
{
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw Error("cannot open for reading: " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("PNG read failed: " + path);
  }

  png_init_io(png, file.get());
  png_read_info(png, info);
  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  const int bitDepth = png_get_bit_depth(png, info);
  const int channels = png_get_channels(png, info);
  if (bitDepth != expectBitDepth || channels != expectChannels) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(path + ": expected " + std::to_string(expectChannels) + "x" +
                std::to_string(expectBitDepth) + "-bit, got " + std::to_string(channels) + "x" +
                std::to_string(bitDepth) + "-bit");
  }
  if (bitDepth == 16) png_set_swap(png);

  const std::size_t rowBytes =
      static_cast<std::size_t>(width) * channels * (bitDepth / 8);
  out.resize(rowBytes * height);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) rows[y] = out.data() + y * rowBytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
}

template <typename ImageT>
ImageT ReadTyped(const std::string& path, int channels, int bitDepth)
{
  std::vector<unsigned char> raw;
  int w = 0, h = 0;
  ReadPngImpl(path, raw, w, h, channels, bitDepth);
  ImageT img = ImageT::Create(w, h);
  std::memcpy(img.data.data(), raw.data(), raw.size());
  return img;
}

}  // namespace

void WritePng(const std::string& path, const ImageRgb8& img)
{
  WritePngImpl(path, img.data.data(), img.width, img.height, 3, 8);
}
void WritePng(const std::string& path, const ImageGray8& img)
{
  WritePngImpl(path, img.data.data(), img.width, img.height, 1, 8);
}
void WritePng(const std::string& path, const ImageGray16& img)
{
  WritePngImpl(path, img.data.data(), img.width, img.height, 1, 16);
}
void WritePng(const std::string& path, const ImageRgb16& img)
{
  WritePngImpl(path, img.data.data(), img.width, img.height, 3, 16);
}

ImageRgb8 ReadPngRgb8(const std::string& path) { return ReadTyped<ImageRgb8>(path, 3, 8); }
ImageGray8 ReadPngGray8(const std::string& path) { return ReadTyped<ImageGray8>(path, 1, 8); }
ImageGray16 ReadPngGray16(const std::string& path) { return ReadTyped<ImageGray16>(path, 1, 16); }
ImageRgb16 ReadPngRgb16(const std::string& path) { return ReadTyped<ImageRgb16>(path, 3, 16); }

}  // namespace usynth

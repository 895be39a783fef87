#pragma once

#include <string>

#include "usynth/image.hpp"

namespace usynth {

// Lossless PNG with fixed encoder settings so identical pixels give
// byte-identical files. 16-bit samples are written big-endian per the spec.
void WritePng(const std::string& path, const ImageRgb8& img);
void WritePng(const std::string& path, const ImageGray8& img);
void WritePng(const std::string& path, const ImageGray16& img);
void WritePng(const std::string& path, const ImageRgb16& img);

ImageRgb8 ReadPngRgb8(const std::string& path);
ImageGray8 ReadPngGray8(const std::string& path);
ImageGray16 ReadPngGray16(const std::string& path);
ImageRgb16 ReadPngRgb16(const std::string& path);

}  // namespace usynth

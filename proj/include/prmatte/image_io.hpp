#pragma once

#include "prmatte/types.hpp"

#include <string>

namespace prmatte {

// PNG I/O. Values are normalized reals in [0,1]; files are 8- or 16-bit
// grayscale or RGB. 16-bit grayscale round-trips losslessly.
void write_png_gray(const std::string& path, const Plane& plane, int bit_depth = 16);
void write_png_rgb(const std::string& path, const Image& image, int bit_depth = 16);

struct PngContents {
  int channels = 0;  // 1 or 3
  int bit_depth = 0;
  Plane gray;  // valid when channels == 1
  Image rgb;   // valid when channels == 3
};

PngContents read_png(const std::string& path);
Plane read_png_gray(const std::string& path);   // RGB input is converted via mean
Image read_png_rgb(const std::string& path);    // gray input is broadcast

// In-memory JPEG encode/decode round trip at the given quality (1..100).
// 4:4:4 sampling, so quality 100 is near-lossless.
Image jpeg_roundtrip(const Image& image, int quality);

}  // namespace prmatte

#pragma once

// Internal 8-bit image codec shared by the raster loaders/savers.
// PNG via libpng, PGM/PPM hand-rolled. Not part of the public API.

#include <cstdint>
#include <string>
#include <vector>

namespace lr::detail {

struct RawImage {
    int width = 0;
    int height = 0;
    int channels = 0; // 1 or 3
    std::vector<uint8_t> pixels; // interleaved row-major
};

// Sniffs the magic bytes; decodes PNG (any 8-bit-compatible color type,
// normalized to gray or RGB) and binary PGM/PPM with maxval 255.
RawImage decode_image_file(const std::string& path);

// Encodes by extension: .png, .pgm (1 channel), .ppm (3 channels).
// Deterministic output: fixed PNG filter/compression settings, no ancillary
// chunks.
void encode_image_file(const std::string& path, const RawImage& img);

} // namespace lr::detail

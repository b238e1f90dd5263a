#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "labelrefine/errors.hpp"

namespace lr {

// Square patch window. (x0,y0) is the top-left corner, side the edge length.
struct PatchRect {
    int x0 = 0;
    int y0 = 0;
    int side = 0;

    bool operator==(const PatchRect&) const = default;
};

// Fundus image raster, channel-interleaved row-major, 1 or 3 channels,
// values normalized to [0,1].
class RasterImage {
public:
    RasterImage() = default;
    RasterImage(int width, int height, int channels, float fill = 0.0f);
    RasterImage(int width, int height, int channels, std::vector<float> data);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }

    float at(int y, int x, int c) const {
        return data_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
    }
    float& at(int y, int x, int c) {
        return data_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
    }

    const std::vector<float>& data() const { return data_; }
    std::vector<float>& data() { return data_; }

    bool operator==(const RasterImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<float> data_;
};

// Binary vessel annotation raster, row-major, values in {0,1}, 1 = vessel.
class LabelMap {
public:
    LabelMap() = default;
    LabelMap(int width, int height, uint8_t fill = 0);
    LabelMap(int width, int height, std::vector<uint8_t> data);

    int width() const { return width_; }
    int height() const { return height_; }

    uint8_t at(int y, int x) const {
        return data_[static_cast<size_t>(y) * width_ + x];
    }
    uint8_t& at(int y, int x) {
        return data_[static_cast<size_t>(y) * width_ + x];
    }

    const std::vector<uint8_t>& data() const { return data_; }
    std::vector<uint8_t>& data() { return data_; }

    bool operator==(const LabelMap&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<uint8_t> data_;
};

// Per-pixel probability raster, row-major, values in [0,1].
class ProbMap {
public:
    ProbMap() = default;
    ProbMap(int width, int height, float fill = 0.0f);
    ProbMap(int width, int height, std::vector<float> data);

    int width() const { return width_; }
    int height() const { return height_; }

    float at(int y, int x) const {
        return data_[static_cast<size_t>(y) * width_ + x];
    }
    float& at(int y, int x) {
        return data_[static_cast<size_t>(y) * width_ + x];
    }

    const std::vector<float>& data() const { return data_; }
    std::vector<float>& data() { return data_; }

    bool operator==(const ProbMap&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
};

// --- patch geometry -------------------------------------------------------

// General rectangular crop. Output pixel (i,j) equals source (y0+i, x0+j).
// Throws DataError when the window leaves the source raster.
RasterImage crop(const RasterImage& src, int x0, int y0, int w, int h);
LabelMap crop(const LabelMap& src, int x0, int y0, int w, int h);
ProbMap crop(const ProbMap& src, int x0, int y0, int w, int h);

RasterImage crop(const RasterImage& src, const PatchRect& rect);
LabelMap crop(const LabelMap& src, const PatchRect& rect);
ProbMap crop(const ProbMap& src, const PatchRect& rect);

// --- annotation agreement ------------------------------------------------

// Fraction of vessel pixels: |{v=1}| / (W*H).
double vessel_ratio(const LabelMap& label);

// Intersection-over-union |a∩b| / |a∪b|. Two empty maps agree vacuously and
// score 1.0. Throws DataError on dimension mismatch.
double iou(const LabelMap& a, const LabelMap& b);

LabelMap complement(const LabelMap& v);

// --- file I/O --------------------------------------------------------------
//
// Supported formats: PNG (8-bit grayscale or RGB) and binary PGM/PPM
// (P5/P6, maxval 255). Writers pick the format from the file extension
// (.png/.pgm/.ppm); readers sniff the magic bytes. Label maps are written
// as 8-bit grayscale {0,255}; probability maps quantize to 8 bits.

RasterImage load_image(const std::string& path);

// Pixels become 1 iff stored intensity (normalized to [0,1]) >= threshold.
// RGB inputs are averaged across channels first.
LabelMap load_label(const std::string& path, double binarize_threshold = 0.5);

ProbMap load_prob(const std::string& path);

void save_image(const std::string& path, const RasterImage& img);
void save_label(const std::string& path, const LabelMap& label);
void save_prob(const std::string& path, const ProbMap& prob);

} // namespace lr

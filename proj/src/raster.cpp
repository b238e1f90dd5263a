#include "labelrefine/raster.hpp"

#include <cmath>

#include "image_codec.hpp"

namespace lr {

namespace {

void check_dims(int w, int h, const char* what) {
    if (w <= 0 || h <= 0) throw DataError(std::string(what) + ": zero-sized raster");
}

void check_window(int x0, int y0, int w, int h, int sw, int sh) {
    if (w <= 0 || h <= 0 || x0 < 0 || y0 < 0 || x0 + w > sw || y0 + h > sh)
        throw DataError("crop window out of bounds");
}

} // namespace

RasterImage::RasterImage(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels),
      data_(static_cast<size_t>(width) * height * channels, fill) {
    check_dims(width, height, "RasterImage");
    if (channels != 1 && channels != 3) throw DataError("RasterImage: channels must be 1 or 3");
    if (fill < 0.0f || fill > 1.0f) throw DataError("RasterImage: fill outside [0,1]");
}

RasterImage::RasterImage(int width, int height, int channels, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    check_dims(width, height, "RasterImage");
    if (channels != 1 && channels != 3) throw DataError("RasterImage: channels must be 1 or 3");
    if (data_.size() != static_cast<size_t>(width) * height * channels)
        throw DataError("RasterImage: data length mismatch");
    for (float v : data_)
        if (!(v >= 0.0f && v <= 1.0f)) throw DataError("RasterImage: value outside [0,1]");
}

LabelMap::LabelMap(int width, int height, uint8_t fill)
    : width_(width), height_(height), data_(static_cast<size_t>(width) * height, fill) {
    check_dims(width, height, "LabelMap");
    if (fill > 1) throw DataError("LabelMap: fill must be 0 or 1");
}

LabelMap::LabelMap(int width, int height, std::vector<uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height, "LabelMap");
    if (data_.size() != static_cast<size_t>(width) * height)
        throw DataError("LabelMap: data length mismatch");
    for (uint8_t v : data_)
        if (v > 1) throw DataError("LabelMap: value not in {0,1}");
}

ProbMap::ProbMap(int width, int height, float fill)
    : width_(width), height_(height), data_(static_cast<size_t>(width) * height, fill) {
    check_dims(width, height, "ProbMap");
    if (fill < 0.0f || fill > 1.0f) throw DataError("ProbMap: fill outside [0,1]");
}

ProbMap::ProbMap(int width, int height, std::vector<float> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height, "ProbMap");
    if (data_.size() != static_cast<size_t>(width) * height)
        throw DataError("ProbMap: data length mismatch");
    for (float v : data_)
        if (!(v >= 0.0f && v <= 1.0f)) throw DataError("ProbMap: value outside [0,1]");
}

// --- crops ------------------------------------------------------------------

RasterImage crop(const RasterImage& src, int x0, int y0, int w, int h) {
    check_window(x0, y0, w, h, src.width(), src.height());
    RasterImage out(w, h, src.channels());
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j)
            for (int c = 0; c < src.channels(); ++c)
                out.at(i, j, c) = src.at(y0 + i, x0 + j, c);
    return out;
}

LabelMap crop(const LabelMap& src, int x0, int y0, int w, int h) {
    check_window(x0, y0, w, h, src.width(), src.height());
    LabelMap out(w, h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j)
            out.at(i, j) = src.at(y0 + i, x0 + j);
    return out;
}

ProbMap crop(const ProbMap& src, int x0, int y0, int w, int h) {
    check_window(x0, y0, w, h, src.width(), src.height());
    ProbMap out(w, h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j)
            out.at(i, j) = src.at(y0 + i, x0 + j);
    return out;
}

RasterImage crop(const RasterImage& src, const PatchRect& r) {
    return crop(src, r.x0, r.y0, r.side, r.side);
}
LabelMap crop(const LabelMap& src, const PatchRect& r) {
    return crop(src, r.x0, r.y0, r.side, r.side);
}
ProbMap crop(const ProbMap& src, const PatchRect& r) {
    return crop(src, r.x0, r.y0, r.side, r.side);
}

// --- agreement ---------------------------------------------------------------

double vessel_ratio(const LabelMap& label) {
    size_t ones = 0;
    for (uint8_t v : label.data()) ones += v;
    return static_cast<double>(ones) / static_cast<double>(label.data().size());
}

double iou(const LabelMap& a, const LabelMap& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw DataError("iou: dimension mismatch");
    size_t inter = 0, uni = 0;
    const auto& da = a.data();
    const auto& db = b.data();
    for (size_t i = 0; i < da.size(); ++i) {
        inter += da[i] & db[i];
        uni += da[i] | db[i];
    }
    if (uni == 0) return 1.0; // vacuous agreement of two empty maps
    return static_cast<double>(inter) / static_cast<double>(uni);
}

LabelMap complement(const LabelMap& v) {
    LabelMap out = v;
    for (uint8_t& p : out.data()) p = static_cast<uint8_t>(1 - p);
    return out;
}

// --- file I/O -----------------------------------------------------------------

RasterImage load_image(const std::string& path) {
    detail::RawImage raw = detail::decode_image_file(path);
    std::vector<float> data(raw.pixels.size());
    for (size_t i = 0; i < raw.pixels.size(); ++i)
        data[i] = static_cast<float>(raw.pixels[i]) / 255.0f;
    return RasterImage(raw.width, raw.height, raw.channels, std::move(data));
}

LabelMap load_label(const std::string& path, double binarize_threshold) {
    if (binarize_threshold < 0.0 || binarize_threshold > 1.0)
        throw DataError("load_label: threshold outside [0,1]");
    detail::RawImage raw = detail::decode_image_file(path);
    size_t n = static_cast<size_t>(raw.width) * raw.height;
    std::vector<uint8_t> data(n);
    for (size_t i = 0; i < n; ++i) {
        double v;
        if (raw.channels == 1) {
            v = raw.pixels[i] / 255.0;
        } else {
            size_t o = i * 3;
            v = (raw.pixels[o] + raw.pixels[o + 1] + raw.pixels[o + 2]) / (3.0 * 255.0);
        }
        data[i] = v >= binarize_threshold ? 1 : 0;
    }
    return LabelMap(raw.width, raw.height, std::move(data));
}

ProbMap load_prob(const std::string& path) {
    detail::RawImage raw = detail::decode_image_file(path);
    if (raw.channels != 1) throw DataError("load_prob: expected grayscale file: " + path);
    std::vector<float> data(raw.pixels.size());
    for (size_t i = 0; i < raw.pixels.size(); ++i)
        data[i] = static_cast<float>(raw.pixels[i]) / 255.0f;
    return ProbMap(raw.width, raw.height, std::move(data));
}

namespace {
uint8_t to_byte(float v) {
    float s = v * 255.0f + 0.5f;
    if (s < 0.0f) s = 0.0f;
    if (s > 255.0f) s = 255.0f;
    return static_cast<uint8_t>(s);
}
} // namespace

void save_image(const std::string& path, const RasterImage& img) {
    detail::RawImage raw;
    raw.width = img.width();
    raw.height = img.height();
    raw.channels = img.channels();
    raw.pixels.resize(img.data().size());
    for (size_t i = 0; i < img.data().size(); ++i) raw.pixels[i] = to_byte(img.data()[i]);
    detail::encode_image_file(path, raw);
}

void save_label(const std::string& path, const LabelMap& label) {
    detail::RawImage raw;
    raw.width = label.width();
    raw.height = label.height();
    raw.channels = 1;
    raw.pixels.resize(label.data().size());
    for (size_t i = 0; i < label.data().size(); ++i)
        raw.pixels[i] = label.data()[i] ? 255 : 0;
    detail::encode_image_file(path, raw);
}

void save_prob(const std::string& path, const ProbMap& prob) {
    detail::RawImage raw;
    raw.width = prob.width();
    raw.height = prob.height();
    raw.channels = 1;
    raw.pixels.resize(prob.data().size());
    for (size_t i = 0; i < prob.data().size(); ++i) raw.pixels[i] = to_byte(prob.data()[i]);
    detail::encode_image_file(path, raw);
}

} // namespace lr

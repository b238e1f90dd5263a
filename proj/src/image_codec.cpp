#include "image_codec.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <memory>

#include "labelrefine/errors.hpp"

namespace lr::detail {

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

std::string lower_ext(const std::string& path) {
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

// ---- PNG ------------------------------------------------------------------

RawImage decode_png(FILE* f, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw DataError("png: out of memory reading " + path);
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw DataError("png: out of memory reading " + path);
    }

    RawImage out;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("png: failed to decode " + path);
    }

    png_init_io(png, f);
    png_read_info(png, info);

    png_uint_32 w = png_get_image_width(png, info);
    png_uint_32 h = png_get_image_height(png, info);
    int bit_depth = png_get_bit_depth(png, info);
    int color_type = png_get_color_type(png, info);

    // Normalize everything to 8-bit gray or RGB.
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS))
        png_set_strip_alpha(png);
    if (png_get_interlace_type(png, info) != PNG_INTERLACE_NONE)
        png_set_interlace_handling(png);
    png_read_update_info(png, info);

    int channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("png: unsupported channel count in " + path);
    }
    if (w == 0 || h == 0) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("png: zero-sized raster in " + path);
    }

    out.width = static_cast<int>(w);
    out.height = static_cast<int>(h);
    out.channels = channels;
    out.pixels.resize(static_cast<size_t>(w) * h * channels);
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y)
        rows[y] = out.pixels.data() + static_cast<size_t>(y) * w * channels;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

void encode_png(FILE* f, const RawImage& img, const std::string& path) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw DataError("png: out of memory writing " + path);
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw DataError("png: out of memory writing " + path);
    }
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw DataError("png: failed to encode " + path);
    }
    png_init_io(png, f);
    // Fixed settings keep the byte stream reproducible run to run.
    png_set_compression_level(png, 6);
    png_set_filter(png, 0, PNG_FILTER_SUB);
    png_set_IHDR(png, info, img.width, img.height, 8,
                 img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    rows.resize(img.height);
    for (int y = 0; y < img.height; ++y)
        rows[y] = const_cast<png_bytep>(img.pixels.data()) +
                  static_cast<size_t>(y) * img.width * img.channels;
    png_write_image(png, rows.data());
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

// ---- PNM (P5/P6, binary, maxval 255) ---------------------------------------

int pnm_token(FILE* f, const std::string& path) {
    // Skips whitespace and '#' comments, then parses a decimal integer.
    int c = std::fgetc(f);
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(f);
        } else if (std::isspace(c)) {
            c = std::fgetc(f);
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) throw DataError("pnm: malformed header in " + path);
    long v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + (c - '0');
        if (v > 1 << 30) throw DataError("pnm: header value out of range in " + path);
        c = std::fgetc(f);
    }
    if (c != EOF && !std::isspace(c)) throw DataError("pnm: malformed header in " + path);
    return static_cast<int>(v);
}

RawImage decode_pnm(FILE* f, char kind, const std::string& path) {
    RawImage out;
    out.channels = (kind == '6') ? 3 : 1;
    out.width = pnm_token(f, path);
    out.height = pnm_token(f, path);
    int maxval = pnm_token(f, path);
    if (out.width <= 0 || out.height <= 0) throw DataError("pnm: zero-sized raster in " + path);
    if (maxval != 255) throw DataError("pnm: only maxval 255 supported in " + path);
    size_t n = static_cast<size_t>(out.width) * out.height * out.channels;
    out.pixels.resize(n);
    if (std::fread(out.pixels.data(), 1, n, f) != n)
        throw DataError("pnm: truncated pixel data in " + path);
    return out;
}

void encode_pnm(FILE* f, const RawImage& img, const std::string& path) {
    std::fprintf(f, "P%c\n%d %d\n255\n", img.channels == 3 ? '6' : '5', img.width, img.height);
    size_t n = img.pixels.size();
    if (std::fwrite(img.pixels.data(), 1, n, f) != n)
        throw DataError("pnm: short write to " + path);
}

} // namespace

RawImage decode_image_file(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw DataError("cannot open " + path);
    unsigned char magic[8] = {0};
    size_t got = std::fread(magic, 1, 8, f.get());
    if (got >= 8 && !png_sig_cmp(magic, 0, 8)) {
        std::rewind(f.get());
        return decode_png(f.get(), path);
    }
    if (got >= 2 && magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6')) {
        std::fseek(f.get(), 2, SEEK_SET);
        return decode_pnm(f.get(), static_cast<char>(magic[1]), path);
    }
    throw DataError("unsupported image format: " + path);
}

void encode_image_file(const std::string& path, const RawImage& img) {
    if (img.width <= 0 || img.height <= 0)
        throw DataError("refusing to write zero-sized raster to " + path);
    if (img.channels != 1 && img.channels != 3)
        throw DataError("unsupported channel count writing " + path);
    std::string ext = lower_ext(path);
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw DataError("cannot open for writing: " + path);
    if (ext == "png") {
        encode_png(f.get(), img, path);
    } else if (ext == "pgm" || ext == "ppm") {
        if (ext == "pgm" && img.channels != 1)
            throw DataError("pgm holds 1 channel, got 3: " + path);
        if (ext == "ppm" && img.channels != 3)
            throw DataError("ppm holds 3 channels, got 1: " + path);
        encode_pnm(f.get(), img, path);
    } else {
        throw DataError("unsupported output extension (use .png/.pgm/.ppm): " + path);
    }
}

} // namespace lr::detail

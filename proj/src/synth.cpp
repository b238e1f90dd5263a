#include "labelrefine/synth.hpp"

#include <algorithm>
#include <cmath>

#include "labelrefine/rng.hpp"

namespace lr {

namespace {

constexpr double kPi = 3.14159265358979323846;

void stamp(LabelMap& label, double cx, double cy, int width) {
    // Width 1 marks the nearest pixel; wider strokes stamp a disk of
    // diameter `width` around the center.
    int side = label.width();
    if (width <= 1) {
        int x = static_cast<int>(std::lround(cx));
        int y = static_cast<int>(std::lround(cy));
        if (x >= 0 && x < side && y >= 0 && y < label.height()) label.at(y, x) = 1;
        return;
    }
    double r = width / 2.0;
    int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
    int x1 = std::min(side - 1, static_cast<int>(std::ceil(cx + r)));
    int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
    int y1 = std::min(label.height() - 1, static_cast<int>(std::ceil(cy + r)));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            double dx = x - cx, dy = y - cy;
            if (dx * dx + dy * dy <= r * r) label.at(y, x) = 1;
        }
}

struct Walk {
    double x, y, heading;
    int width;
    int steps;
};

void trace_curve(LabelMap& label, SplitMix64& rng, const SynthStyle& style, Walk w,
                 int depth) {
    int side = label.width();
    for (int s = 0; s < w.steps; ++s) {
        stamp(label, w.x, w.y, w.width);
        w.heading += style.heading_sigma * rng.next_normal();
        w.x += std::cos(w.heading);
        w.y += std::sin(w.heading);
        if (w.x < -2 || w.x > side + 1 || w.y < -2 || w.y > side + 1) break;
        if (depth == 0 && s == w.steps / 2 && rng.next_double() < style.branch_prob) {
            Walk b = w;
            b.heading += (rng.next_double() < 0.5 ? 1.0 : -1.0) * (0.5 + rng.next_double());
            b.width = std::max(style.width_min, w.width - 1);
            b.steps = w.steps / 2;
            trace_curve(label, rng, style, b, depth + 1);
        }
    }
}

LabelMap make_label(int side, SplitMix64& rng, const SynthStyle& style) {
    LabelMap label(side, side);
    int n_curves = style.curves_min +
                   static_cast<int>(rng.next_below(
                       static_cast<uint64_t>(style.curves_max - style.curves_min + 1)));
    int drawn = 0;
    // Keep adding curves until the count target and the minimum vessel
    // ratio are both met; the cap bounds degenerate draws.
    while (drawn < n_curves || (vessel_ratio(label) < style.min_ratio && drawn < 64)) {
        Walk w;
        // Start on a random border pixel heading inward.
        int edge = static_cast<int>(rng.next_below(4));
        double t = rng.next_double() * (side - 1);
        switch (edge) {
            case 0: w.x = t; w.y = 0; w.heading = kPi / 2; break;
            case 1: w.x = t; w.y = side - 1; w.heading = -kPi / 2; break;
            case 2: w.x = 0; w.y = t; w.heading = 0; break;
            default: w.x = side - 1; w.y = t; w.heading = kPi; break;
        }
        w.heading += (rng.next_double() - 0.5) * (kPi / 2);
        w.width = style.width_min +
                  static_cast<int>(rng.next_below(
                      static_cast<uint64_t>(style.width_max - style.width_min + 1)));
        w.steps = side + static_cast<int>(rng.next_below(static_cast<uint64_t>(side)));
        trace_curve(label, rng, style, w, 0);
        ++drawn;
    }
    return label;
}

std::vector<float> box_blur3(const std::vector<float>& src, int w, int h, int passes) {
    std::vector<float> a = src, b(src.size());
    for (int p = 0; p < passes; ++p) {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                float sum = 0.0f;
                int n = 0;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        int yy = y + dy, xx = x + dx;
                        if (yy < 0 || yy >= h || xx < 0 || xx >= w) continue;
                        sum += a[static_cast<size_t>(yy) * w + xx];
                        ++n;
                    }
                b[static_cast<size_t>(y) * w + x] = sum / static_cast<float>(n);
            }
        std::swap(a, b);
    }
    return a;
}

RasterImage make_image(const LabelMap& label, SplitMix64& rng, const SynthStyle& style) {
    int side = label.width();

    // Low-frequency background: bilinear interpolation of a coarse random grid.
    int cells = side / style.bg_cell + 2;
    std::vector<double> grid(static_cast<size_t>(cells) * cells);
    for (double& g : grid)
        g = style.bg_level + (rng.next_double() * 2.0 - 1.0) * style.bg_texture;

    std::vector<float> vessel(label.data().size());
    for (size_t i = 0; i < vessel.size(); ++i) vessel[i] = static_cast<float>(label.data()[i]);
    vessel = box_blur3(vessel, side, side, style.blur_passes);

    RasterImage img(side, side, 3);
    const double chan_gain[3] = {1.00, 0.82, 0.62}; // fundus-like reddish cast
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            double gx = static_cast<double>(x) / style.bg_cell;
            double gy = static_cast<double>(y) / style.bg_cell;
            int ix = static_cast<int>(gx), iy = static_cast<int>(gy);
            double fx = gx - ix, fy = gy - iy;
            double bg = grid[static_cast<size_t>(iy) * cells + ix] * (1 - fx) * (1 - fy) +
                        grid[static_cast<size_t>(iy) * cells + ix + 1] * fx * (1 - fy) +
                        grid[static_cast<size_t>(iy + 1) * cells + ix] * (1 - fx) * fy +
                        grid[static_cast<size_t>(iy + 1) * cells + ix + 1] * fx * fy;
            double base = bg - style.vessel_contrast * vessel[static_cast<size_t>(y) * side + x] +
                          style.noise_sigma * rng.next_normal();
            for (int c = 0; c < 3; ++c)
                img.at(y, x, c) = static_cast<float>(std::clamp(base * chan_gain[c], 0.0, 1.0));
        }
    }
    return img;
}

} // namespace

void SynthStyle::validate() const {
    if (curves_min < 1 || curves_max < curves_min)
        throw DataError("SynthStyle: bad curve count range");
    if (width_min < 1 || width_max < width_min || width_max > 8)
        throw DataError("SynthStyle: bad width range");
    if (min_ratio < 0 || min_ratio > 0.5) throw DataError("SynthStyle: bad min_ratio");
    if (bg_cell < 2) throw DataError("SynthStyle: bg_cell too small");
}

std::vector<SynthSample> synth_corpus(int count, int side, uint64_t seed,
                                      const SynthStyle& style) {
    if (count < 0) throw DataError("synth_corpus: negative count");
    if (count > 0 && side < 32) throw DataError("synth_corpus: side must be >= 32");
    style.validate();
    std::vector<SynthSample> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        SynthSample s;
        s.sample_seed = derive_seed(seed, static_cast<uint64_t>(i));
        SplitMix64 rng(s.sample_seed);
        s.clean = make_label(side, rng, style);
        s.image = make_image(s.clean, rng, style);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace lr

#pragma once

#include <cstdint>
#include <vector>

#include "labelrefine/raster.hpp"

namespace lr {

// Procedural vessel-like corpus generator. Samples are random smooth curve
// trees rasterized onto a binary label; the paired image is the label
// blurred and printed dark over a textured background with mild noise.
// Purpose is end-to-end pipeline testing at desk scale, not realism.
struct SynthStyle {
    int curves_min = 3;
    int curves_max = 6;
    int width_min = 1;
    int width_max = 4;
    double heading_sigma = 0.28;  // per-step heading jitter, radians
    double branch_prob = 0.25;    // chance a curve spawns one branch
    double min_ratio = 0.03;      // every label reaches at least this vessel ratio
    double bg_level = 0.72;       // mean background intensity
    double bg_texture = 0.10;     // amplitude of the low-frequency texture
    int bg_cell = 16;             // texture grid pitch in pixels
    double vessel_contrast = 0.38;
    double noise_sigma = 0.02;
    int blur_passes = 1;          // 3x3 box blur passes applied to the label

    void validate() const;
};

struct SynthSample {
    RasterImage image; // 3-channel
    LabelMap clean;
    uint64_t sample_seed = 0;
};

// Deterministic in (count, side, seed, style); per-sample seeds are derived
// from the corpus seed and the sample index.
std::vector<SynthSample> synth_corpus(int count, int side, uint64_t seed,
                                      const SynthStyle& style = {});

} // namespace lr

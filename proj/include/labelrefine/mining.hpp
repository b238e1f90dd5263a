#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "labelrefine/noise.hpp"
#include "labelrefine/raster.hpp"

namespace lr {

// High-quality patch gates: a random crop is kept when its vessel ratio
// clears ratio_min and the two annotations agree above iou_min.
struct MineConfig {
    int patch_side = 256;
    int patches_per_image = 300;
    double ratio_min = 0.05;
    double iou_min = 0.90;
    uint64_t seed = 0;
    int retry_factor = 50; // retry budget = retry_factor * patches_per_image

    void validate() const;
};

struct MinedPatch {
    RasterImage image;
    LabelMap label; // the first-observer crop
    PatchRect rect;
};

struct MineResult {
    std::vector<MinedPatch> patches;
    int shortfall = 0; // quota minus accepted when the retry budget ran out
};

// Rejection-samples rects until the quota is met or the budget is exhausted.
// Draw j uses the RNG stream derive_seed(cfg.seed, j), so mining is
// reproducible and order-independent. annot2 is the verification annotation.
MineResult mine_patches(const RasterImage& image, const LabelMap& annot1,
                        const LabelMap& annot2, const MineConfig& cfg);

// One training triple (x, y, z): image patch, clean label, simulated noisy
// label, plus enough provenance to regenerate it.
struct PatchPair {
    RasterImage image;
    LabelMap clean;
    LabelMap noisy;
    std::string source;
    PatchRect rect;
    uint64_t noise_seed = 0;
    CellOpLog oplog;
};

// Degrades every mined patch with simulate_noise; the per-patch seed is
// derive_seed(noise_cfg.seed, patch index).
std::vector<PatchPair> build_training_set(const std::vector<MinedPatch>& mined,
                                          const NoiseConfig& noise_cfg);

} // namespace lr

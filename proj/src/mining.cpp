#include "labelrefine/mining.hpp"

#include "labelrefine/rng.hpp"

namespace lr {

void MineConfig::validate() const {
    if (patch_side < 1) throw DataError("MineConfig: patch_side must be >= 1");
    if (patches_per_image < 0) throw DataError("MineConfig: negative quota");
    if (ratio_min < 0 || ratio_min > 1) throw DataError("MineConfig: ratio_min outside [0,1]");
    if (iou_min < 0 || iou_min > 1) throw DataError("MineConfig: iou_min outside [0,1]");
    if (retry_factor < 1) throw DataError("MineConfig: retry_factor must be >= 1");
}

MineResult mine_patches(const RasterImage& image, const LabelMap& annot1,
                        const LabelMap& annot2, const MineConfig& cfg) {
    cfg.validate();
    if (image.width() != annot1.width() || image.height() != annot1.height() ||
        annot1.width() != annot2.width() || annot1.height() != annot2.height())
        throw DataError("mine_patches: raster dimensions differ");
    if (cfg.patch_side > image.width() || cfg.patch_side > image.height())
        throw DataError("mine_patches: patch_side exceeds source raster");

    const uint64_t max_x = static_cast<uint64_t>(image.width() - cfg.patch_side + 1);
    const uint64_t max_y = static_cast<uint64_t>(image.height() - cfg.patch_side + 1);

    MineResult res;
    long budget = static_cast<long>(cfg.retry_factor) * cfg.patches_per_image;
    for (long draw = 0; draw < budget &&
                        res.patches.size() < static_cast<size_t>(cfg.patches_per_image);
         ++draw) {
        SplitMix64 rng(derive_seed(cfg.seed, static_cast<uint64_t>(draw)));
        PatchRect rect;
        rect.x0 = static_cast<int>(rng.next_below(max_x));
        rect.y0 = static_cast<int>(rng.next_below(max_y));
        rect.side = cfg.patch_side;

        LabelMap p1 = crop(annot1, rect);
        if (!(vessel_ratio(p1) > cfg.ratio_min)) continue;
        LabelMap p2 = crop(annot2, rect);
        if (!(iou(p1, p2) > cfg.iou_min)) continue;

        res.patches.push_back({crop(image, rect), std::move(p1), rect});
    }
    res.shortfall = cfg.patches_per_image - static_cast<int>(res.patches.size());
    return res;
}

std::vector<PatchPair> build_training_set(const std::vector<MinedPatch>& mined,
                                          const NoiseConfig& noise_cfg) {
    noise_cfg.validate();
    std::vector<PatchPair> out;
    out.reserve(mined.size());
    for (size_t i = 0; i < mined.size(); ++i) {
        NoiseConfig cfg = noise_cfg;
        cfg.seed = derive_seed(noise_cfg.seed, static_cast<uint64_t>(i));
        NoiseResult nr = simulate_noise(mined[i].label, cfg);
        PatchPair pair;
        pair.image = mined[i].image;
        pair.clean = mined[i].label;
        pair.noisy = std::move(nr.noisy);
        pair.rect = mined[i].rect;
        pair.noise_seed = cfg.seed;
        pair.oplog = std::move(nr.ops);
        out.push_back(std::move(pair));
    }
    return out;
}

} // namespace lr

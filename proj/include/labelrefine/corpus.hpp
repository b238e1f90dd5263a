#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "labelrefine/mining.hpp"
#include "labelrefine/synth.hpp"

namespace lr {

// Corpus directory layout:
//   <dir>/pairs/NNNNN_img.png    3- or 1-channel image patch
//   <dir>/pairs/NNNNN_clean.png  high-quality label
//   <dir>/pairs/NNNNN_noisy.png  simulated noisy label (training corpora only)
//   <dir>/manifest.tsv           id, source, rect, seeds, per-cell op log
// Manifest fields use "-" when absent.
struct CorpusEntry {
    int id = 0;
    std::string source;
    PatchRect rect;
    uint64_t seed = 0;          // sample seed (synth) or mining seed
    std::optional<uint64_t> noise_seed;
    std::string oplog;          // {E,D,O,C,I} per grid cell, row-major
};

struct Corpus {
    std::string dir;
    std::vector<CorpusEntry> entries;

    bool has_noisy() const;
    std::string image_path(int idx) const;
    std::string clean_path(int idx) const;
    std::string noisy_path(int idx) const;
};

// Writers create <dir> and <dir>/pairs. Existing files are overwritten.
void write_corpus(const std::string& dir, const std::vector<SynthSample>& samples);
void write_corpus(const std::string& dir, const std::vector<PatchPair>& pairs);

// Mined patches (no noisy maps yet); source identifies the origin image.
void write_corpus(const std::string& dir, const std::vector<MinedPatch>& patches,
                  const std::vector<std::string>& sources,
                  const std::vector<uint64_t>& seeds);

Corpus load_corpus(const std::string& dir);

// Loads the raster triple for one entry; noisy is empty when absent.
struct LoadedPair {
    RasterImage image;
    LabelMap clean;
    LabelMap noisy;
};
LoadedPair load_pair(const Corpus& corpus, int idx, bool want_noisy);

// In-memory view used by the trainer.
std::vector<PatchPair> load_pairs(const Corpus& corpus);

} // namespace lr

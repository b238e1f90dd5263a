#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "labelrefine/morphology.hpp"
#include "labelrefine/raster.hpp"

namespace lr {

// Regular grid over a patch. Cells tile the patch exactly; ragged right and
// bottom edges produce smaller cells.
struct GridSpec {
    int cell_side = 32;
};

struct GridCell {
    int x0 = 0, y0 = 0, w = 0, h = 0;
};

// Row-major list of grid cells tiling a (width x height) patch.
std::vector<GridCell> partition_grid(int width, int height, const GridSpec& grid);

// Cells plus their contents, row-major.
std::vector<std::pair<GridCell, LabelMap>> partition_grid(const LabelMap& v,
                                                          const GridSpec& grid);

// Grid-wise probabilistic degradation of a clean label patch. Per cell a
// uniform draw p selects erode / dilate / open / close / identity with the
// configured probabilities (defaults 0.25 / 0.25 / 0.10 / 0.10, remainder
// identity). Erode/dilate use the 2x2 element, open/close the 3x3 one.
struct NoiseConfig {
    double p_erode = 0.25;
    double p_dilate = 0.25;
    double p_open = 0.10;
    double p_close = 0.10;
    int se_erode_dilate = 2;
    int se_open_close = 3;
    GridSpec grid;
    uint64_t seed = 0;

    void validate() const;
};

// Applied operation per cell, row-major: E, D, O, C or I.
using CellOpLog = std::string;

struct NoiseResult {
    LabelMap noisy;
    CellOpLog ops;
    int undersized_cells = 0; // cells smaller than their SE, forced to identity
};

// Draws one uniform per cell in row-major order from SplitMix64(cfg.seed),
// processes each selected cell locally (cropped, degraded with its own
// borders, stored back). Cells smaller than the structuring element get
// identity and are counted in undersized_cells.
NoiseResult simulate_noise(const LabelMap& v, const NoiseConfig& cfg);

} // namespace lr

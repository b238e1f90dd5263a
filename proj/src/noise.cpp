#include "labelrefine/noise.hpp"

#include "labelrefine/rng.hpp"

namespace lr {

void NoiseConfig::validate() const {
    if (p_erode < 0 || p_dilate < 0 || p_open < 0 || p_close < 0)
        throw DataError("NoiseConfig: probabilities must be nonnegative");
    if (p_erode + p_dilate + p_open + p_close > 1.0 + 1e-12)
        throw DataError("NoiseConfig: probabilities sum above 1");
    if (se_erode_dilate < 1 || se_open_close < 1)
        throw DataError("NoiseConfig: structuring element side must be >= 1");
    if (grid.cell_side < 1) throw DataError("NoiseConfig: cell_side must be >= 1");
}

std::vector<GridCell> partition_grid(int width, int height, const GridSpec& grid) {
    if (grid.cell_side < 1) throw DataError("partition_grid: cell_side must be >= 1");
    std::vector<GridCell> cells;
    for (int y0 = 0; y0 < height; y0 += grid.cell_side) {
        int h = std::min(grid.cell_side, height - y0);
        for (int x0 = 0; x0 < width; x0 += grid.cell_side) {
            int w = std::min(grid.cell_side, width - x0);
            cells.push_back({x0, y0, w, h});
        }
    }
    return cells;
}

std::vector<std::pair<GridCell, LabelMap>> partition_grid(const LabelMap& v,
                                                          const GridSpec& grid) {
    std::vector<std::pair<GridCell, LabelMap>> out;
    for (const GridCell& c : partition_grid(v.width(), v.height(), grid))
        out.emplace_back(c, crop(v, c.x0, c.y0, c.w, c.h));
    return out;
}

NoiseResult simulate_noise(const LabelMap& v, const NoiseConfig& cfg) {
    cfg.validate();
    const StructuringElement se_ed = StructuringElement::square(cfg.se_erode_dilate);
    const StructuringElement se_oc = StructuringElement::square(cfg.se_open_close);

    const double t_erode = cfg.p_erode;
    const double t_dilate = t_erode + cfg.p_dilate;
    const double t_open = t_dilate + cfg.p_open;
    const double t_close = t_open + cfg.p_close;

    NoiseResult res;
    res.noisy = v;
    SplitMix64 rng(cfg.seed);

    for (const GridCell& cell : partition_grid(v.width(), v.height(), cfg.grid)) {
        double p = rng.next_double();
        char op;
        int se_side;
        if (p < t_erode) {
            op = 'E';
            se_side = cfg.se_erode_dilate;
        } else if (p < t_dilate) {
            op = 'D';
            se_side = cfg.se_erode_dilate;
        } else if (p < t_open) {
            op = 'O';
            se_side = cfg.se_open_close;
        } else if (p < t_close) {
            op = 'C';
            se_side = cfg.se_open_close;
        } else {
            op = 'I';
            se_side = 1;
        }

        if (op != 'I' && (cell.w < se_side || cell.h < se_side)) {
            // Morphology on a cell smaller than the element is degenerate.
            ++res.undersized_cells;
            op = 'I';
        }

        if (op != 'I') {
            LabelMap local = crop(v, cell.x0, cell.y0, cell.w, cell.h);
            switch (op) {
                case 'E': local = erode(local, se_ed); break;
                case 'D': local = dilate(local, se_ed); break;
                case 'O': local = opening(local, se_oc); break;
                case 'C': local = closing(local, se_oc); break;
            }
            for (int i = 0; i < cell.h; ++i)
                for (int j = 0; j < cell.w; ++j)
                    res.noisy.at(cell.y0 + i, cell.x0 + j) = local.at(i, j);
        }
        res.ops.push_back(op);
    }
    return res;
}

} // namespace lr

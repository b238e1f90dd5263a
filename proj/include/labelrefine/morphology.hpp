#pragma once

#include <utility>
#include <vector>

#include "labelrefine/raster.hpp"

namespace lr {

// Square structuring element. Odd sides anchor at their center; even sides
// have no center, so the offsets cover {0..side-1}² and erosion/dilation form
// an adjunction through the p+d / p-d convention below. That makes opening
// and closing exactly idempotent.
struct StructuringElement {
    int side = 0;
    std::vector<std::pair<int, int>> offsets; // (dy,dx)

    static StructuringElement square(int side);
};

// Reflection through the origin: {-d | d in se}.
StructuringElement reflect(const StructuringElement& se);

// erode(v)(p)  = min over d in se of v(p+d); out-of-bounds reads 1.
// dilate(v)(p) = max over d in se of v(p-d); out-of-bounds reads 0.
// The padding keeps all-ones and all-zeros maps fixed points and preserves
// the duality dilate(v,se) = complement(erode(complement(v), reflect(se))).
LabelMap erode(const LabelMap& v, const StructuringElement& se);
LabelMap dilate(const LabelMap& v, const StructuringElement& se);

// opening = dilate ∘ erode (removes small foreground),
// closing = erode ∘ dilate (fills small gaps). Both idempotent.
LabelMap opening(const LabelMap& v, const StructuringElement& se);
LabelMap closing(const LabelMap& v, const StructuringElement& se);

} // namespace lr

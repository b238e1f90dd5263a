#include "labelrefine/morphology.hpp"

namespace lr {

StructuringElement StructuringElement::square(int side) {
    if (side < 1) throw DataError("StructuringElement: side must be >= 1");
    StructuringElement se;
    se.side = side;
    se.offsets.reserve(static_cast<size_t>(side) * side);
    int lo = side % 2 == 1 ? -(side - 1) / 2 : 0;
    for (int dy = lo; dy < lo + side; ++dy)
        for (int dx = lo; dx < lo + side; ++dx)
            se.offsets.emplace_back(dy, dx);
    return se;
}

StructuringElement reflect(const StructuringElement& se) {
    StructuringElement r;
    r.side = se.side;
    r.offsets.reserve(se.offsets.size());
    for (auto [dy, dx] : se.offsets) r.offsets.emplace_back(-dy, -dx);
    return r;
}

LabelMap erode(const LabelMap& v, const StructuringElement& se) {
    const int w = v.width(), h = v.height();
    LabelMap out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            uint8_t m = 1;
            for (auto [dy, dx] : se.offsets) {
                int yy = y + dy, xx = x + dx;
                uint8_t s = (yy < 0 || yy >= h || xx < 0 || xx >= w) ? 1 : v.at(yy, xx);
                if (s == 0) {
                    m = 0;
                    break;
                }
            }
            out.at(y, x) = m;
        }
    }
    return out;
}

LabelMap dilate(const LabelMap& v, const StructuringElement& se) {
    const int w = v.width(), h = v.height();
    LabelMap out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            uint8_t m = 0;
            for (auto [dy, dx] : se.offsets) {
                int yy = y - dy, xx = x - dx;
                uint8_t s = (yy < 0 || yy >= h || xx < 0 || xx >= w) ? 0 : v.at(yy, xx);
                if (s == 1) {
                    m = 1;
                    break;
                }
            }
            out.at(y, x) = m;
        }
    }
    return out;
}

LabelMap opening(const LabelMap& v, const StructuringElement& se) {
    return dilate(erode(v, se), se);
}

LabelMap closing(const LabelMap& v, const StructuringElement& se) {
    return erode(dilate(v, se), se);
}

} // namespace lr

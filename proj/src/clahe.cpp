#include "mri/clahe.hpp"

#include <algorithm>
#include <cmath>

namespace mri {
namespace {

void split_axis(int extent, int tiles, std::vector<int>& origin, std::vector<int>& len,
                std::vector<int>& center) {
    origin.resize(tiles);
    len.resize(tiles);
    center.resize(tiles);
    const int base = extent / tiles;
    for (int i = 0; i < tiles; ++i) {
        origin[i] = i * base;
        len[i] = (i == tiles - 1) ? extent - origin[i] : base;
        center[i] = origin[i] + len[i] / 2;
    }
}

}  // namespace

std::uint32_t effective_clip_threshold(const ClaheParams& params, std::uint64_t tile_pixels) {
    auto c = static_cast<std::uint64_t>(params.clip_limit * tile_pixels / 256.0);
    return static_cast<std::uint32_t>(std::max<std::uint64_t>(1, c));
}

Histogram clip_histogram(const Histogram& h, std::uint32_t clip_threshold) {
    Histogram out = h;
    std::uint64_t excess = 0;
    for (int v = 0; v < 256; ++v) {
        if (out.bins[v] > clip_threshold) {
            excess += out.bins[v] - clip_threshold;
            out.bins[v] = clip_threshold;
        }
    }
    const auto share = static_cast<std::uint32_t>(excess / 256);
    const auto remainder = static_cast<int>(excess % 256);
    for (int v = 0; v < 256; ++v) out.bins[v] += share;
    for (int v = 0; v < remainder; ++v) ++out.bins[v];
    return out;
}

TileGrid build_tile_grid(const GrayImage& img, const ClaheParams& params) {
    if (params.tiles_x < 1 || params.tiles_y < 1 || params.tiles_x > img.width ||
        params.tiles_y > img.height)
        throw InvalidGrid("tile grid must be >= 1x1 and no finer than the pixel grid");

    TileGrid grid;
    grid.tiles_x = params.tiles_x;
    grid.tiles_y = params.tiles_y;
    split_axis(img.width, params.tiles_x, grid.x0, grid.tile_w, grid.cx);
    split_axis(img.height, params.tiles_y, grid.y0, grid.tile_h, grid.cy);
    grid.luts.resize(static_cast<std::size_t>(params.tiles_x) * params.tiles_y);

    for (int ty = 0; ty < params.tiles_y; ++ty) {
        for (int tx = 0; tx < params.tiles_x; ++tx) {
            Histogram h;
            for (int y = grid.y0[ty]; y < grid.y0[ty] + grid.tile_h[ty]; ++y) {
                const std::uint8_t* row = &img.data[static_cast<std::size_t>(y) * img.width];
                for (int x = grid.x0[tx]; x < grid.x0[tx] + grid.tile_w[tx]; ++x)
                    ++h.bins[row[x]];
            }
            h.total = static_cast<std::uint64_t>(grid.tile_w[tx]) * grid.tile_h[ty];
            const std::uint32_t c = effective_clip_threshold(params, h.total);
            grid.luts[static_cast<std::size_t>(ty) * params.tiles_x + tx] =
                he_lut(compute_cdf(clip_histogram(h, c)));
        }
    }
    return grid;
}

namespace {

// Index of the tile whose center is at or left of coordinate v, and the
// blend fraction toward the next center. Outside the outer centers the
// fraction is 0 and the edge tile is used alone.
inline void locate(const std::vector<int>& centers, int v, int& idx, double& frac) {
    const int last = static_cast<int>(centers.size()) - 1;
    if (v <= centers[0]) {
        idx = 0;
        frac = 0.0;
        return;
    }
    if (v >= centers[last]) {
        idx = last;
        frac = 0.0;
        return;
    }
    int i = 0;
    while (centers[i + 1] <= v) ++i;
    idx = i;
    frac = static_cast<double>(v - centers[i]) / (centers[i + 1] - centers[i]);
}

}  // namespace

GrayImage apply_clahe(const GrayImage& img, const ClaheParams& params) {
    const TileGrid grid = build_tile_grid(img, params);
    GrayImage out(img.width, img.height);

    for (int y = 0; y < img.height; ++y) {
        int ty;
        double fy;
        locate(grid.cy, y, ty, fy);
        const int ty1 = (fy > 0.0) ? ty + 1 : ty;
        const std::uint8_t* src = &img.data[static_cast<std::size_t>(y) * img.width];
        std::uint8_t* dst = &out.data[static_cast<std::size_t>(y) * img.width];
        for (int x = 0; x < img.width; ++x) {
            int tx;
            double fx;
            locate(grid.cx, x, tx, fx);
            const int tx1 = (fx > 0.0) ? tx + 1 : tx;
            const std::uint8_t v = src[x];
            const double top = (1.0 - fx) * grid.lut(tx, ty).map[v] +
                               fx * grid.lut(tx1, ty).map[v];
            const double bot = (1.0 - fx) * grid.lut(tx, ty1).map[v] +
                               fx * grid.lut(tx1, ty1).map[v];
            dst[x] = static_cast<std::uint8_t>(std::floor((1.0 - fy) * top + fy * bot + 0.5));
        }
    }
    return out;
}

}  // namespace mri

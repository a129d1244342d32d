#pragma once

#include <cstdint>
#include <vector>

#include "mri/histogram.hpp"
#include "mri/image.hpp"

namespace mri {

struct ClaheParams {
    int tiles_x = 8;
    int tiles_y = 8;
    /// Multiple of the uniform bin level tile_pixels/256. The effective
    /// per-bin ceiling is max(1, floor(clip_limit * tile_pixels / 256)).
    double clip_limit = 2.0;
};

/// Per-tile equalization maps. Tiles partition the image exactly; remainder
/// pixels join the last tile along each axis.
struct TileGrid {
    int tiles_x = 0;
    int tiles_y = 0;
    std::vector<int> x0, tile_w, cx;  // per column: origin, width, center
    std::vector<int> y0, tile_h, cy;  // per row
    std::vector<IntensityLut> luts;   // row-major, tiles_x * tiles_y

    const IntensityLut& lut(int tx, int ty) const { return luts[ty * tiles_x + tx]; }
};

/// Cut bins above C and spread the excess uniformly: every bin gains
/// floor(E/256), bins 0..(E mod 256)-1 one more. Total mass is conserved
/// exactly; after the pass no bin exceeds C + ceil(E/256).
Histogram clip_histogram(const Histogram& h, std::uint32_t clip_threshold);

std::uint32_t effective_clip_threshold(const ClaheParams& params, std::uint64_t tile_pixels);

TileGrid build_tile_grid(const GrayImage& img, const ClaheParams& params);

/// Contrast-limited adaptive equalization: each pixel is the bilinear blend
/// of the four nearest tile-center maps evaluated at its input value, with
/// clamping to edge tiles outside the outer tile-center rectangle.
GrayImage apply_clahe(const GrayImage& img, const ClaheParams& params);

}  // namespace mri

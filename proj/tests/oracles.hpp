// Naive reference implementations used as oracles. These deliberately avoid
// the library's LUT/kernel machinery: everything is computed per pixel from
// the defining formulas, in plain double arithmetic.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mri/image.hpp"

namespace oracle {

inline std::uint8_t round_half_up_u8(double v) {
    return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

// Global HE: for each pixel, count every pixel at or below its value and map
// through (L-1) * cdf directly.
inline mri::GrayImage equalize(const mri::GrayImage& img) {
    const double mn = static_cast<double>(img.size());
    mri::GrayImage out(img.width, img.height);
    for (std::size_t p = 0; p < img.size(); ++p) {
        std::uint64_t at_or_below = 0;
        for (std::size_t q = 0; q < img.size(); ++q)
            if (img.data[q] <= img.data[p]) ++at_or_below;
        out.data[p] = round_half_up_u8(255.0 * at_or_below / mn);
    }
    return out;
}

inline std::vector<std::uint64_t> clip_histogram(std::vector<std::uint64_t> bins,
                                                 std::uint64_t limit) {
    std::uint64_t excess = 0;
    for (auto& b : bins)
        if (b > limit) {
            excess += b - limit;
            b = limit;
        }
    for (auto& b : bins) b += excess / 256;
    for (std::size_t v = 0; v < excess % 256; ++v) ++bins[v];
    return bins;
}

struct ClaheSetup {
    int tiles_x, tiles_y;
    double clip_limit;
};

// Full CLAHE recomputed from scratch for every pixel: tile extents with the
// remainder in the last tile, per-tile clipped histogram, per-tile transfer
// value, then bilinear blending between integer tile centers with edge clamp.
inline mri::GrayImage clahe(const mri::GrayImage& img, const ClaheSetup& s) {
    auto tile_of = [](int extent, int tiles, int i, int& origin, int& len) {
        int base = extent / tiles;
        origin = i * base;
        len = (i == tiles - 1) ? extent - origin : base;
    };

    auto tile_value = [&](int tx, int ty, std::uint8_t level) -> double {
        int x0, tw, y0, th;
        tile_of(img.width, s.tiles_x, tx, x0, tw);
        tile_of(img.height, s.tiles_y, ty, y0, th);
        std::vector<std::uint64_t> bins(256, 0);
        for (int y = y0; y < y0 + th; ++y)
            for (int x = x0; x < x0 + tw; ++x) ++bins[img.at(x, y)];
        const std::uint64_t pixels = static_cast<std::uint64_t>(tw) * th;
        const std::uint64_t limit = std::max<std::uint64_t>(
            1, static_cast<std::uint64_t>(s.clip_limit * pixels / 256.0));
        bins = clip_histogram(std::move(bins), limit);
        std::uint64_t cum = 0;
        for (int v = 0; v <= level; ++v) cum += bins[v];
        return std::floor(255.0 * cum / pixels + 0.5);
    };

    auto center = [&](int extent, int tiles, int i) {
        int origin, len;
        tile_of(extent, tiles, i, origin, len);
        return origin + len / 2;
    };

    auto axis_blend = [&](int tiles, int extent, int v, int& i0, int& i1, double& f) {
        i0 = i1 = 0;
        f = 0.0;
        while (i0 + 1 < tiles && center(extent, tiles, i0 + 1) <= v) ++i0;
        i1 = i0;
        const int c0 = center(extent, tiles, i0);
        if (v > c0 && i0 + 1 < tiles) {
            i1 = i0 + 1;
            f = static_cast<double>(v - c0) / (center(extent, tiles, i1) - c0);
        }
    };

    mri::GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            int tx0, tx1, ty0, ty1;
            double fx, fy;
            axis_blend(s.tiles_x, img.width, x, tx0, tx1, fx);
            axis_blend(s.tiles_y, img.height, y, ty0, ty1, fy);
            const std::uint8_t v = img.at(x, y);
            const double top =
                (1.0 - fx) * tile_value(tx0, ty0, v) + fx * tile_value(tx1, ty0, v);
            const double bot =
                (1.0 - fx) * tile_value(tx0, ty1, v) + fx * tile_value(tx1, ty1, v);
            out.at(x, y) = round_half_up_u8((1.0 - fy) * top + fy * bot);
        }
    }
    return out;
}

struct NaiveMetrics {
    std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
    double accuracy = 0, loss = 0, mse = 0, jaccard = 0, dice = 0;
};

// Metrics by direct per-pixel enumeration of the defining sums, reading the
// prediction as a {0,1}-valued probability clamped for the logs.
inline NaiveMetrics metrics(const std::vector<std::uint8_t>& pred,
                            const std::vector<std::uint8_t>& truth) {
    NaiveMetrics m;
    const double eps = 1e-7;
    double loss_sum = 0, sq_sum = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] && truth[i]) ++m.tp;
        if (pred[i] && !truth[i]) ++m.fp;
        if (!pred[i] && truth[i]) ++m.fn;
        if (!pred[i] && !truth[i]) ++m.tn;
        const double p = std::clamp(static_cast<double>(pred[i]), eps, 1.0 - eps);
        loss_sum += truth[i] ? std::log(p) : std::log(1.0 - p);
        const double d = static_cast<double>(pred[i]) - static_cast<double>(truth[i]);
        sq_sum += d * d;
    }
    const double n = static_cast<double>(pred.size());
    m.accuracy = (m.tp + m.tn) / n;
    m.loss = -loss_sum / n;
    m.mse = sq_sum / n;
    m.jaccard = (m.tp + m.fp + m.fn) ? static_cast<double>(m.tp) / (m.tp + m.fp + m.fn) : 1.0;
    m.dice = (2 * m.tp + m.fp + m.fn) ? 2.0 * m.tp / (2 * m.tp + m.fp + m.fn) : 1.0;
    return m;
}

inline mri::GrayImage random_image(std::mt19937& rng, int max_side = 64, int lo = 0,
                                   int hi = 255) {
    std::uniform_int_distribution<int> side(1, max_side);
    std::uniform_int_distribution<int> value(lo, hi);
    mri::GrayImage img(side(rng), side(rng));
    for (auto& p : img.data) p = static_cast<std::uint8_t>(value(rng));
    return img;
}

}  // namespace oracle

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "mri/image.hpp"

namespace mri {

/// 256-bin intensity counts over an image or tile.
struct Histogram {
    std::array<std::uint32_t, 256> bins{};
    std::uint64_t total = 0;
};

/// Cumulative counts; cum[255] == total == pixel count of the region.
struct Cdf {
    std::array<std::uint64_t, 256> cum{};
    std::uint64_t total = 0;

    double prob(int level) const { return static_cast<double>(cum[level]) / total; }
};

/// Per-level intensity transfer map, monotone nondecreasing.
struct IntensityLut {
    std::array<std::uint8_t, 256> map{};

    bool operator==(const IntensityLut&) const = default;
};

Histogram compute_histogram(const GrayImage& img);
Histogram compute_histogram(std::span<const std::uint8_t> pixels);

/// Merge two region histograms; associative, equal to a single serial pass.
Histogram merge(const Histogram& a, const Histogram& b);

Cdf compute_cdf(const Histogram& h);

/// Equalization map: map[v] = round_half_up(255 * cum[v] / total).
/// The division is by the full pixel count with no cdf-min subtraction, so a
/// constant image maps to 255.
IntensityLut he_lut(const Cdf& cdf);

/// Global histogram equalization of the whole image.
GrayImage equalize(const GrayImage& img);

/// CSV export, one row per level: `level,count,cum,prob`.
std::string histogram_csv(const Histogram& h);

/// JSON export with arrays keyed `bins`, `cum`, `prob`.
nlohmann::json histogram_json(const Histogram& h);

}  // namespace mri

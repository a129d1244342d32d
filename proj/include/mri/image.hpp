#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mri {

class MalformedFile : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedFormat : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidGrid : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Owned 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::size_t size() const { return data.size(); }
    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    bool operator==(const GrayImage&) const = default;
};

/// Per-pixel real values in [0,1], row-major.
struct ProbabilityMap {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    ProbabilityMap() = default;
    ProbabilityMap(int w, int h, float fill = 0.f)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::size_t size() const { return data.size(); }
};

/// Per-pixel {0,1} labels, row-major. Label 1 is the positive (tumor) class.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    BinaryMask() = default;
    BinaryMask(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::size_t size() const { return data.size(); }

    bool operator==(const BinaryMask&) const = default;
};

/// Mask value 1 where p >= t (boundary inclusive), else 0.
BinaryMask threshold(const ProbabilityMap& p, float t);

}  // namespace mri

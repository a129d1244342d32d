#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mri/image.hpp"

namespace mri {

/// Decode a PNG (8-bit gray or 24-bit RGB) or binary PGM (P5) file.
/// RGB is reduced with integer BT.601 luma: round(0.299R + 0.587G + 0.114B).
/// 16-bit depths and palette/alpha color types are rejected.
GrayImage decode_image(std::span<const std::uint8_t> bytes);

/// Binary PGM, maxval 255. Lossless: decode_image(encode_pgm(img)) == img.
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

/// 8-bit grayscale PNG.
std::vector<std::uint8_t> encode_png(const GrayImage& img);

GrayImage load_image(const std::filesystem::path& path);
void save_image(const std::filesystem::path& path, const GrayImage& img);

}  // namespace mri

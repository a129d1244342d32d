#pragma once

#include "mri/image.hpp"

namespace mri {

/// Bilinear resize with half-pixel centers: the source coordinate for output
/// pixel d is (d + 0.5) * in/out - 0.5, clamped to the image bounds.
/// Samples are rounded half-up to 8 bits. Resizing to the same dimensions is
/// the identity.
GrayImage resize(const GrayImage& img, int out_w, int out_h);

}  // namespace mri

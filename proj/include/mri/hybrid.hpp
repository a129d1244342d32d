#pragma once

#include "mri/clahe.hpp"
#include "mri/image.hpp"

namespace mri {

enum class HybridMode {
    WeightedBlend,  // a*HE + (1-a)*CLAHE, both on the original image
    HeThenClahe,
    ClaheThenHe,
};

struct HybridSpec {
    HybridMode mode = HybridMode::WeightedBlend;
    double alpha = 0.5;  // WeightedBlend only, in [0,1]
    ClaheParams clahe;
};

/// Per-pixel convex combination of the globally equalized and the CLAHE
/// image, rounded half-up once after the real-valued combination.
/// alpha = 1 reproduces equalize() exactly; alpha = 0 reproduces apply_clahe().
GrayImage blend(const GrayImage& img, const HybridSpec& spec);

/// Sequential composition in the order named by the mode.
GrayImage compose(const GrayImage& img, const HybridSpec& spec);

}  // namespace mri

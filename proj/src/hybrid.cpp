#include "mri/hybrid.hpp"

#include <stdexcept>

#include "mri/histogram.hpp"
#include "mri/kernels.hpp"

namespace mri {

GrayImage blend(const GrayImage& img, const HybridSpec& spec) {
    if (spec.mode != HybridMode::WeightedBlend)
        throw std::invalid_argument("blend: spec mode must be WeightedBlend");
    if (spec.alpha < 0.0 || spec.alpha > 1.0)
        throw std::invalid_argument("blend: alpha must be in [0,1]");

    const GrayImage he = equalize(img);
    const GrayImage cl = apply_clahe(img, spec.clahe);
    GrayImage out(img.width, img.height);
    kernels::active_ops().blend_round(he.data.data(), cl.data.data(), out.data.data(),
                                      out.size(), spec.alpha);
    return out;
}

GrayImage compose(const GrayImage& img, const HybridSpec& spec) {
    switch (spec.mode) {
        case HybridMode::HeThenClahe:
            return apply_clahe(equalize(img), spec.clahe);
        case HybridMode::ClaheThenHe:
            return equalize(apply_clahe(img, spec.clahe));
        default:
            throw std::invalid_argument("compose: spec mode must be sequential");
    }
}

}  // namespace mri

#include "mri/image.hpp"

#include <stdexcept>

#include "mri/kernels.hpp"

namespace mri {

BinaryMask threshold(const ProbabilityMap& p, float t) {
    if (t < 0.f || t > 1.f) throw std::invalid_argument("threshold: t must be in [0,1]");
    BinaryMask mask(p.width, p.height);
    kernels::active_ops().threshold(p.data.data(), mask.data.data(), p.size(), t);
    return mask;
}

}  // namespace mri

#include "mri/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace mri::kernels {

const Ops& active_ops() {
    static const Ops* selected = [] {
        const char* force = std::getenv("MRI_ENHANCE_SIMD");
        if (force && std::strcmp(force, "scalar") == 0) return &scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
        if (force && std::strcmp(force, "avx2") == 0) return &avx2_ops();
        if (!force && avx2_supported()) return &avx2_ops();
#endif
        return &scalar_ops();
    }();
    return *selected;
}

}  // namespace mri::kernels

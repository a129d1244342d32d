#pragma once

#include <cstddef>
#include <cstdint>

// Pixel inner loops used by the enhancement and metrics code.
//
// Every kernel exists in a scalar reference form; on x86-64 an AVX2 variant
// is selected at runtime when the CPU supports it. Variants must produce
// results identical to the scalar reference except where noted (reduction
// order for sum_sq_diff). Set MRI_ENHANCE_SIMD=scalar|avx2 to force a lane.

namespace mri::kernels {

struct ConfusionTally {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
};

struct Ops {
    const char* name;

    // dst[i] = lut[src[i]]
    void (*apply_lut)(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                      const std::uint8_t* lut);

    // dst[i] = floor(alpha*a[i] + (1-alpha)*b[i] + 0.5), computed in double
    void (*blend_round)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst,
                        std::size_t n, double alpha);

    // dst[i] = p[i] >= t ? 1 : 0
    void (*threshold)(const float* p, std::uint8_t* dst, std::size_t n, float t);

    // pred/truth hold {0,1} labels
    ConfusionTally (*confusion)(const std::uint8_t* pred, const std::uint8_t* truth,
                                std::size_t n);

    // sum over i of (pred[i] - truth[i])^2, truth in {0,1}
    double (*sum_sq_diff)(const float* pred, const std::uint8_t* truth, std::size_t n);

    // bins[v] += count of src values equal to v
    void (*accumulate_histogram)(const std::uint8_t* src, std::size_t n, std::uint32_t* bins);
};

const Ops& scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
bool avx2_supported();
#endif

/// Runtime-selected kernel set (env override MRI_ENHANCE_SIMD).
const Ops& active_ops();

}  // namespace mri::kernels

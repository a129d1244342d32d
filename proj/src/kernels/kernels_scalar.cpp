#include "mri/kernels.hpp"

#include <cmath>

namespace mri::kernels {
namespace {

void apply_lut_scalar(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                      const std::uint8_t* lut) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = lut[src[i]];
}

void blend_round_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst,
                        std::size_t n, double alpha) {
    const double beta = 1.0 - alpha;
    for (std::size_t i = 0; i < n; ++i) {
        double v = alpha * static_cast<double>(a[i]) + beta * static_cast<double>(b[i]);
        dst[i] = static_cast<std::uint8_t>(std::floor(v + 0.5));
    }
}

void threshold_scalar(const float* p, std::uint8_t* dst, std::size_t n, float t) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = p[i] >= t ? 1 : 0;
}

ConfusionTally confusion_scalar(const std::uint8_t* pred, const std::uint8_t* truth,
                                std::size_t n) {
    ConfusionTally c;
    for (std::size_t i = 0; i < n; ++i) {
        c.tp += pred[i] & truth[i];
        c.fp += pred[i] & (1u - truth[i]);
        c.fn += (1u - pred[i]) & truth[i];
    }
    c.tn = n - c.tp - c.fp - c.fn;
    return c;
}

double sum_sq_diff_scalar(const float* pred, const std::uint8_t* truth, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = static_cast<double>(pred[i]) - static_cast<double>(truth[i]);
        acc += d * d;
    }
    return acc;
}

void histogram_scalar(const std::uint8_t* src, std::size_t n, std::uint32_t* bins) {
    // Four interleaved tallies break the store-forwarding dependency chain.
    std::uint32_t h0[256] = {}, h1[256] = {}, h2[256] = {}, h3[256] = {};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        ++h0[src[i]];
        ++h1[src[i + 1]];
        ++h2[src[i + 2]];
        ++h3[src[i + 3]];
    }
    for (; i < n; ++i) ++h0[src[i]];
    for (int v = 0; v < 256; ++v) bins[v] += h0[v] + h1[v] + h2[v] + h3[v];
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar",          apply_lut_scalar,    blend_round_scalar,
        threshold_scalar,  confusion_scalar,    sum_sq_diff_scalar,
        histogram_scalar,
    };
    return ops;
}

}  // namespace mri::kernels

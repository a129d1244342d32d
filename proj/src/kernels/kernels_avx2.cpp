#if defined(__x86_64__) || defined(_M_X64)

#include "mri/kernels.hpp"

#include <cmath>
#include <cstring>
#include <immintrin.h>

namespace mri::kernels {
namespace {

// Widen 4 bytes to 4 doubles.
inline __m256d load4_u8_pd(const std::uint8_t* p) {
    int raw;
    std::memcpy(&raw, p, 4);
    __m128i b = _mm_cvtsi32_si128(raw);
    __m128i i32 = _mm_cvtepu8_epi32(b);
    return _mm256_cvtepi32_pd(i32);
}

void blend_round_avx2(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst,
                      std::size_t n, double alpha) {
    const double beta = 1.0 - alpha;
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d vb = _mm256_set1_pd(beta);
    const __m256d half = _mm256_set1_pd(0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xa = load4_u8_pd(a + i);
        __m256d xb = load4_u8_pd(b + i);
        // mul+add (not fma) so the scalar lane rounds identically
        __m256d v = _mm256_add_pd(_mm256_mul_pd(va, xa), _mm256_mul_pd(vb, xb));
        v = _mm256_floor_pd(_mm256_add_pd(v, half));
        __m128i i32 = _mm256_cvttpd_epi32(v);
        __m128i i16 = _mm_packus_epi32(i32, i32);
        __m128i i8 = _mm_packus_epi16(i16, i16);
        int out = _mm_cvtsi128_si32(i8);
        std::memcpy(dst + i, &out, 4);
    }
    for (; i < n; ++i) {
        double v = alpha * static_cast<double>(a[i]) + beta * static_cast<double>(b[i]);
        dst[i] = static_cast<std::uint8_t>(std::floor(v + 0.5));
    }
}

void threshold_avx2(const float* p, std::uint8_t* dst, std::size_t n, float t) {
    const __m256 vt = _mm256_set1_ps(t);
    const __m256i one = _mm256_set1_epi32(1);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 x = _mm256_loadu_ps(p + i);
        __m256 m = _mm256_cmp_ps(x, vt, _CMP_GE_OQ);
        __m256i bits = _mm256_and_si256(_mm256_castps_si256(m), one);
        __m128i lo = _mm256_castsi256_si128(bits);
        __m128i hi = _mm256_extracti128_si256(bits, 1);
        __m128i i16 = _mm_packus_epi32(lo, hi);
        __m128i i8 = _mm_packus_epi16(i16, i16);
        _mm_storel_epi64(reinterpret_cast<__m128i*>(dst + i), i8);
    }
    for (; i < n; ++i) dst[i] = p[i] >= t ? 1 : 0;
}

// Sum the bytes of a {0,1} vector into a running 64-bit accumulator.
inline __m256i byte_sum(__m256i acc, __m256i v) {
    return _mm256_add_epi64(acc, _mm256_sad_epu8(v, _mm256_setzero_si256()));
}

inline std::uint64_t hsum_epi64(__m256i v) {
    __m128i lo = _mm256_castsi256_si128(v);
    __m128i hi = _mm256_extracti128_si256(v, 1);
    __m128i s = _mm_add_epi64(lo, hi);
    return static_cast<std::uint64_t>(_mm_extract_epi64(s, 0)) +
           static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

ConfusionTally confusion_avx2(const std::uint8_t* pred, const std::uint8_t* truth,
                              std::size_t n) {
    __m256i tp = _mm256_setzero_si256();
    __m256i fp = _mm256_setzero_si256();
    __m256i fn = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i vp = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pred + i));
        __m256i vt = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(truth + i));
        tp = byte_sum(tp, _mm256_and_si256(vp, vt));
        fp = byte_sum(fp, _mm256_andnot_si256(vt, vp));
        fn = byte_sum(fn, _mm256_andnot_si256(vp, vt));
    }
    ConfusionTally c;
    c.tp = hsum_epi64(tp);
    c.fp = hsum_epi64(fp);
    c.fn = hsum_epi64(fn);
    for (; i < n; ++i) {
        c.tp += pred[i] & truth[i];
        c.fp += pred[i] & (1u - truth[i]);
        c.fn += (1u - pred[i]) & truth[i];
    }
    c.tn = n - c.tp - c.fp - c.fn;
    return c;
}

double sum_sq_diff_avx2(const float* pred, const std::uint8_t* truth, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vp = _mm256_cvtps_pd(_mm_loadu_ps(pred + i));
        __m256d vt = load4_u8_pd(truth + i);
        __m256d d = _mm256_sub_pd(vp, vt);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s = _mm_add_pd(lo, hi);
    double total = _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
    for (; i < n; ++i) {
        double d = static_cast<double>(pred[i]) - static_cast<double>(truth[i]);
        total += d * d;
    }
    return total;
}

}  // namespace

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

const Ops& avx2_ops() {
    static const Ops ops = {
        "avx2",
        scalar_ops().apply_lut,  // 256-entry gather is not worth vectorizing
        blend_round_avx2,
        threshold_avx2,
        confusion_avx2,
        sum_sq_diff_avx2,
        scalar_ops().accumulate_histogram,
    };
    return ops;
}

}  // namespace mri::kernels

#endif

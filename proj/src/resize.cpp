#include "mri/resize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mri {
namespace {

struct SampleAxis {
    std::vector<int> lo, hi;
    std::vector<double> frac;
};

SampleAxis make_axis(int in, int out) {
    SampleAxis ax;
    ax.lo.resize(out);
    ax.hi.resize(out);
    ax.frac.resize(out);
    const double scale = static_cast<double>(in) / out;
    for (int d = 0; d < out; ++d) {
        double s = (d + 0.5) * scale - 0.5;
        s = std::clamp(s, 0.0, static_cast<double>(in - 1));
        int lo = static_cast<int>(std::floor(s));
        ax.lo[d] = lo;
        ax.hi[d] = std::min(lo + 1, in - 1);
        ax.frac[d] = s - lo;
    }
    return ax;
}

}  // namespace

GrayImage resize(const GrayImage& img, int out_w, int out_h) {
    if (out_w < 1 || out_h < 1) throw std::invalid_argument("resize: target must be >= 1x1");
    if (out_w == img.width && out_h == img.height) return img;

    const SampleAxis xs = make_axis(img.width, out_w);
    const SampleAxis ys = make_axis(img.height, out_h);

    GrayImage out(out_w, out_h);
    for (int y = 0; y < out_h; ++y) {
        const double fy = ys.frac[y];
        const std::uint8_t* row0 = &img.data[static_cast<std::size_t>(ys.lo[y]) * img.width];
        const std::uint8_t* row1 = &img.data[static_cast<std::size_t>(ys.hi[y]) * img.width];
        std::uint8_t* dst = &out.data[static_cast<std::size_t>(y) * out_w];
        for (int x = 0; x < out_w; ++x) {
            const double fx = xs.frac[x];
            const double top = (1.0 - fx) * row0[xs.lo[x]] + fx * row0[xs.hi[x]];
            const double bot = (1.0 - fx) * row1[xs.lo[x]] + fx * row1[xs.hi[x]];
            const double v = (1.0 - fy) * top + fy * bot;
            dst[x] = static_cast<std::uint8_t>(std::floor(v + 0.5));
        }
    }
    return out;
}

}  // namespace mri

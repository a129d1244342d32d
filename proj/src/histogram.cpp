#include "mri/histogram.hpp"

#include <nlohmann/json.hpp>

#include "mri/kernels.hpp"

namespace mri {

Histogram compute_histogram(std::span<const std::uint8_t> pixels) {
    Histogram h;
    kernels::active_ops().accumulate_histogram(pixels.data(), pixels.size(), h.bins.data());
    h.total = pixels.size();
    return h;
}

Histogram compute_histogram(const GrayImage& img) {
    if (img.size() == 0) throw EmptyInput("compute_histogram: empty image");
    return compute_histogram(std::span<const std::uint8_t>(img.data));
}

Histogram merge(const Histogram& a, const Histogram& b) {
    Histogram out;
    for (int v = 0; v < 256; ++v) out.bins[v] = a.bins[v] + b.bins[v];
    out.total = a.total + b.total;
    return out;
}

Cdf compute_cdf(const Histogram& h) {
    if (h.total == 0) throw EmptyInput("compute_cdf: empty histogram");
    Cdf cdf;
    std::uint64_t run = 0;
    for (int v = 0; v < 256; ++v) {
        run += h.bins[v];
        cdf.cum[v] = run;
    }
    cdf.total = h.total;
    return cdf;
}

IntensityLut he_lut(const Cdf& cdf) {
    IntensityLut lut;
    for (int v = 0; v < 256; ++v) {
        // floor(255*cum/total + 0.5) in exact integer arithmetic
        std::uint64_t num = 510u * cdf.cum[v] + cdf.total;
        lut.map[v] = static_cast<std::uint8_t>(num / (2 * cdf.total));
    }
    return lut;
}

GrayImage equalize(const GrayImage& img) {
    IntensityLut lut = he_lut(compute_cdf(compute_histogram(img)));
    GrayImage out(img.width, img.height);
    kernels::active_ops().apply_lut(img.data.data(), out.data.data(), img.size(), lut.map.data());
    return out;
}

std::string histogram_csv(const Histogram& h) {
    Cdf cdf = compute_cdf(h);
    std::string out = "level,count,cum,prob\n";
    char line[64];
    for (int v = 0; v < 256; ++v) {
        std::snprintf(line, sizeof line, "%d,%u,%llu,%.10g\n", v, h.bins[v],
                      static_cast<unsigned long long>(cdf.cum[v]), cdf.prob(v));
        out += line;
    }
    return out;
}

nlohmann::json histogram_json(const Histogram& h) {
    Cdf cdf = compute_cdf(h);
    nlohmann::json j;
    j["bins"] = h.bins;
    j["cum"] = cdf.cum;
    std::array<double, 256> prob;
    for (int v = 0; v < 256; ++v) prob[v] = cdf.prob(v);
    j["prob"] = prob;
    return j;
}

}  // namespace mri

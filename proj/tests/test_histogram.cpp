#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "mri/histogram.hpp"
#include "oracles.hpp"

using namespace mri;

TEST_CASE("compute_histogram: counts and mass conservation") {
    GrayImage flat(2, 2, 5);
    auto h = compute_histogram(flat);
    CHECK(h.bins[5] == 4);
    CHECK(h.total == 4);
    for (int v = 0; v < 256; ++v)
        if (v != 5) CHECK(h.bins[v] == 0);

    GrayImage img(2, 2);
    img.data = {0, 1, 1, 255};
    h = compute_histogram(img);
    CHECK(h.bins[0] == 1);
    CHECK(h.bins[1] == 2);
    CHECK(h.bins[255] == 1);

    std::mt19937 rng(5);
    auto r = oracle::random_image(rng, 16);
    r.width = 16;
    r.height = 16;
    r.data.resize(256);
    CHECK(compute_histogram(r).total == 256);
}

TEST_CASE("compute_cdf: running sums and top anchor") {
    Histogram h;
    h.bins[0] = 4;
    h.total = 4;
    auto cdf = compute_cdf(h);
    for (int v = 0; v < 256; ++v) CHECK(cdf.cum[v] == 4);

    std::mt19937 rng(6);
    auto img = oracle::random_image(rng, 32);
    auto c = compute_cdf(compute_histogram(img));
    CHECK(c.cum[255] == img.size());
}

TEST_CASE("cdf probability matches the 256x256 boundary value") {
    // darkest occupied level holds 18072 of 65536 pixels
    Histogram h;
    h.bins[10] = 18072;
    h.bins[200] = 65536 - 18072;
    h.total = 65536;
    auto cdf = compute_cdf(h);
    CHECK(std::abs(cdf.prob(10) - 0.2758) < 5e-5);
    CHECK(cdf.prob(255) == 1.0);
}

TEST_CASE("he_lut: hand-evaluated transfer values") {
    // constant image: every occupied level maps to 255
    Histogram h;
    h.bins[42] = 64;
    h.total = 64;
    auto lut = he_lut(compute_cdf(h));
    CHECK(lut.map[42] == 255);

    // cum/MN = 0.2758 -> round(255 * 0.2758) = 70
    Histogram fig6;
    fig6.bins[0] = 18072;
    fig6.bins[255] = 65536 - 18072;
    fig6.total = 65536;
    CHECK(he_lut(compute_cdf(fig6)).map[0] == 70);

    // half at 10, half at 200: map[10]=128, map[200]=255
    Histogram two;
    two.bins[10] = 2;
    two.bins[200] = 2;
    two.total = 4;
    auto lut2 = he_lut(compute_cdf(two));
    CHECK(lut2.map[10] == 128);
    CHECK(lut2.map[200] == 255);
}

TEST_CASE("he_lut is monotone with map[255] == 255") {
    std::mt19937 rng(8);
    for (int i = 0; i < 50; ++i) {
        auto img = oracle::random_image(rng, 48);
        auto lut = he_lut(compute_cdf(compute_histogram(img)));
        for (int v = 1; v < 256; ++v) CHECK(lut.map[v] >= lut.map[v - 1]);
        CHECK(lut.map[255] == 255);
    }
}

TEST_CASE("equalize: spec fixtures") {
    GrayImage flat(3, 3, 42);
    auto out = equalize(flat);
    for (auto v : out.data) CHECK(v == 255);

    GrayImage two(2, 2);
    two.data = {10, 10, 200, 200};
    CHECK(equalize(two).data == std::vector<std::uint8_t>{128, 128, 255, 255});
}

TEST_CASE("equalize preserves relative ordering") {
    std::mt19937 rng(13);
    auto img = oracle::random_image(rng, 32);
    auto out = equalize(img);
    for (std::size_t p = 0; p < img.size(); ++p)
        for (std::size_t q = p + 1; q < std::min(img.size(), p + 40); ++q)
            if (img.data[p] <= img.data[q]) CHECK(out.data[p] <= out.data[q]);
}

TEST_CASE("equalize matches the brute-force per-pixel oracle") {
    std::mt19937 rng(21);
    for (int i = 0; i < 30; ++i) {
        auto img = oracle::random_image(rng, 24);
        CHECK(equalize(img) == oracle::equalize(img));
    }
}

TEST_CASE("parallel histogram merge equals the serial pass") {
    std::mt19937 rng(17);
    auto img = oracle::random_image(rng, 64);
    auto serial = compute_histogram(img);
    const std::size_t cut = img.size() / 3;
    auto a = compute_histogram(std::span(img.data.data(), cut));
    auto b = compute_histogram(std::span(img.data.data() + cut, img.size() - cut));
    auto merged = merge(a, b);
    CHECK(merged.bins == serial.bins);
    CHECK(merged.total == serial.total);
}

TEST_CASE("csv and json exports carry all four views") {
    Histogram h;
    h.bins[0] = 1;
    h.bins[255] = 3;
    h.total = 4;
    auto csv = histogram_csv(h);
    CHECK(csv.starts_with("level,count,cum,prob\n0,1,1,0.25\n"));

    auto j = histogram_json(h);
    CHECK(j["bins"].size() == 256);
    CHECK(j["cum"].size() == 256);
    CHECK(j["prob"][255] == 1.0);
}

#include "mri/codec.hpp"

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include <png.h>

namespace mri {
namespace {

bool is_png(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

struct PngReadState {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t len) {
    auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (st->pos + len > st->size) png_error(png, "read past end of buffer");
    std::memcpy(out, st->data + st->pos, len);
    st->pos += len;
}

void png_vec_write(png_structp png, png_bytep data, png_size_t len) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + len);
}

void png_noop_flush(png_structp) {}

GrayImage decode_png(std::span<const std::uint8_t> bytes) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw MalformedFile("png: allocation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw MalformedFile("png: allocation failed");
    }

    std::vector<std::uint8_t> raw;
    int width = 0, height = 0, color_type = 0, bit_depth = 0;
    bool unsupported = false;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw MalformedFile("png: undecodable stream");
    }

    PngReadState st{bytes.data(), bytes.size(), 0};
    png_set_read_fn(png, &st, png_mem_read);
    png_read_info(png, info);

    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));
    color_type = png_get_color_type(png, info);
    bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) {
        unsupported = true;
    } else if (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB) {
        unsupported = true;
    }

    if (!unsupported) {
        if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
        png_read_update_info(png, info);
        const int channels = png_get_channels(png, info);
        const std::size_t rowbytes = png_get_rowbytes(png, info);
        raw.resize(rowbytes * height);
        std::vector<png_bytep> rows(height);
        for (int y = 0; y < height; ++y) rows[y] = raw.data() + rowbytes * y;
        png_read_image(png, rows.data());
        png_read_end(png, nullptr);
        png_destroy_read_struct(&png, &info, nullptr);

        GrayImage img(width, height);
        if (channels == 1) {
            for (int y = 0; y < height; ++y)
                std::memcpy(&img.at(0, y), raw.data() + rowbytes * y, width);
        } else {
            for (int y = 0; y < height; ++y) {
                const std::uint8_t* row = raw.data() + rowbytes * y;
                for (int x = 0; x < width; ++x) {
                    unsigned r = row[3 * x], g = row[3 * x + 1], b = row[3 * x + 2];
                    img.at(x, y) =
                        static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
                }
            }
        }
        return img;
    }

    png_destroy_read_struct(&png, &info, nullptr);
    throw UnsupportedFormat("png: only 8-bit gray or 24-bit RGB accepted (depth " +
                            std::to_string(bit_depth) + ", color type " +
                            std::to_string(color_type) + ")");
}

// PGM header fields are separated by whitespace; '#' starts a comment to EOL.
int pgm_next_int(std::span<const std::uint8_t> bytes, std::size_t& pos) {
    while (pos < bytes.size()) {
        if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else if (std::isspace(bytes[pos])) {
            ++pos;
        } else {
            break;
        }
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos]))
        throw MalformedFile("pgm: expected integer in header");
    long v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
        v = v * 10 + (bytes[pos] - '0');
        if (v > 1 << 30) throw MalformedFile("pgm: header value out of range");
        ++pos;
    }
    return static_cast<int>(v);
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw MalformedFile("pgm: missing P5 magic");
    std::size_t pos = 2;
    int width = pgm_next_int(bytes, pos);
    int height = pgm_next_int(bytes, pos);
    int maxval = pgm_next_int(bytes, pos);
    if (width < 1 || height < 1) throw MalformedFile("pgm: bad dimensions");
    if (maxval > 255) throw UnsupportedFormat("pgm: 16-bit samples not accepted");
    if (maxval < 1) throw MalformedFile("pgm: bad maxval");
    if (pos >= bytes.size() || !std::isspace(bytes[pos]))
        throw MalformedFile("pgm: missing whitespace after maxval");
    ++pos;  // exactly one whitespace byte before the raster
    const std::size_t count = static_cast<std::size_t>(width) * height;
    if (bytes.size() - pos < count) throw MalformedFile("pgm: truncated raster");
    GrayImage img(width, height);
    std::memcpy(img.data.data(), bytes.data() + pos, count);
    return img;
}

}  // namespace

GrayImage decode_image(std::span<const std::uint8_t> bytes) {
    if (is_png(bytes)) return decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes);
    throw MalformedFile("unrecognized image format");
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
    std::string header = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                         "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.data.begin(), img.data.end());
    return out;
}

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png: allocation failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("png: allocation failed");
    }
    std::vector<std::uint8_t> out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("png: encode failed");
    }
    png_set_write_fn(png, &out, png_vec_write, png_noop_flush);
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y)
        png_write_row(png, const_cast<png_bytep>(&img.data[static_cast<std::size_t>(y) * img.width]));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

GrayImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedFile("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_image(bytes);
}

void save_image(const std::filesystem::path& path, const GrayImage& img) {
    auto ext = path.extension().string();
    std::vector<std::uint8_t> bytes = (ext == ".png") ? encode_png(img) : encode_pgm(img);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

}  // namespace mri

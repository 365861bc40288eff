#include "qs/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace qs {

GrayImage::GrayImage(int height, int width, double fill)
    : height_(height), width_(width),
      values_(static_cast<std::size_t>(height) * width, fill) {
    if (height < 1 || width < 1) {
        throw ValidationError("image dimensions must be positive");
    }
}

GrayImage::GrayImage(int height, int width, std::vector<double> values)
    : height_(height), width_(width), values_(std::move(values)) {
    if (height < 1 || width < 1) {
        throw ValidationError("image dimensions must be positive");
    }
    if (values_.size() != static_cast<std::size_t>(height) * width) {
        throw ValidationError("image value buffer does not match dimensions");
    }
}

namespace {

// Netpbm header token reader: skips whitespace and '#' comments.
int read_pnm_int(std::istream& in, const std::string& path) {
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            break;
        }
        ch = in.get();
    }
    if (ch == EOF || !std::isdigit(ch)) {
        throw ParseError("malformed PNM header in " + path);
    }
    int value = 0;
    while (ch != EOF && std::isdigit(ch)) {
        value = value * 10 + (ch - '0');
        ch = in.get();
    }
    return value;
}

}  // namespace

GrayImage read_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open image file: " + path);
    }
    char m0 = 0;
    char m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || (m1 != '5' && m1 != '6')) {
        throw ParseError("unsupported image format (need binary PGM P5 or PPM P6): " + path);
    }
    const bool color = (m1 == '6');
    const int width = read_pnm_int(in, path);
    const int height = read_pnm_int(in, path);
    const int maxval = read_pnm_int(in, path);
    if (maxval != 255) {
        throw ParseError("only maxval 255 is supported: " + path);
    }
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<unsigned char> raw(n * (color ? 3 : 1));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
        throw ParseError("truncated pixel data: " + path);
    }
    std::vector<double> values(n);
    if (color) {
        for (std::size_t i = 0; i < n; ++i) {
            values[i] = 0.299 * raw[3 * i] + 0.587 * raw[3 * i + 1] + 0.114 * raw[3 * i + 2];
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            values[i] = raw[i];
        }
    }
    return GrayImage(height, width, std::move(values));
}

void write_pgm(const GrayImage& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write image file: " + path);
    }
    out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
    std::vector<unsigned char> raw(image.values().size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        raw[i] = static_cast<unsigned char>(
            std::clamp(std::lround(image.values()[i]), 0L, 255L));
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

GrayImage crop_to_even(const GrayImage& image) {
    const int h = image.height() - image.height() % 2;
    const int w = image.width() - image.width() % 2;
    if (h == image.height() && w == image.width()) return image;
    GrayImage out(h, w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            out.at(r, c) = image.at(r, c);
        }
    }
    return out;
}

}  // namespace qs

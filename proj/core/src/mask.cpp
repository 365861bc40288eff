#include "qs/mask.hpp"

#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace qs {

namespace {

void check_even_dims(int height, int width, const char* what) {
    if (height < 2 || width < 2 || height % 2 != 0 || width % 2 != 0) {
        std::ostringstream msg;
        msg << what << " dimensions must be even and >= 2, got " << height << "x" << width;
        throw ValidationError(msg.str());
    }
}

}  // namespace

QuarterMask::QuarterMask(int height, int width, std::vector<std::uint8_t> cells)
    : height_(height), width_(width), cells_(std::move(cells)) {
    check_even_dims(height, width, "mask");
    if (cells_.size() != static_cast<std::size_t>(height) * width) {
        throw ValidationError("mask cell buffer does not match dimensions");
    }
    for (int br = 0; br < height_; br += 2) {
        for (int bc = 0; bc < width_; bc += 2) {
            const int n = (transparent(br, bc) ? 1 : 0) + (transparent(br, bc + 1) ? 1 : 0) +
                          (transparent(br + 1, bc) ? 1 : 0) + (transparent(br + 1, bc + 1) ? 1 : 0);
            if (n != 1) {
                std::ostringstream msg;
                msg << "quarter-sampling condition violated at block (" << br << "," << bc
                    << "): " << n << " transparent pixels";
                throw ValidationError(msg.str());
            }
        }
    }
}

std::size_t QuarterMask::transparent_count() const {
    return static_cast<std::size_t>(
        std::accumulate(cells_.begin(), cells_.end(), std::size_t{0}));
}

QuarterMask make_regular(int height, int width, Corner corner) {
    check_even_dims(height, width, "mask");
    int dr = 0;
    int dc = 0;
    switch (corner) {
        case Corner::TopLeft: break;
        case Corner::TopRight: dc = 1; break;
        case Corner::BottomLeft: dr = 1; break;
        case Corner::BottomRight: dr = 1; dc = 1; break;
    }
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(height) * width, 0);
    for (int br = 0; br < height; br += 2) {
        for (int bc = 0; bc < width; bc += 2) {
            cells[static_cast<std::size_t>(br + dr) * width + (bc + dc)] = 1;
        }
    }
    return QuarterMask(height, width, std::move(cells));
}

QuarterMask make_random(int height, int width, std::uint64_t seed) {
    check_even_dims(height, width, "mask");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 3);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(height) * width, 0);
    for (int br = 0; br < height; br += 2) {
        for (int bc = 0; bc < width; bc += 2) {
            const int p = pick(rng);
            cells[static_cast<std::size_t>(br + p / 2) * width + (bc + p % 2)] = 1;
        }
    }
    return QuarterMask(height, width, std::move(cells));
}

QuarterMask tile_to(const QuarterMask& mask, int target_height, int target_width) {
    check_even_dims(target_height, target_width, "tiling target");
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(target_height) * target_width);
    for (int r = 0; r < target_height; ++r) {
        for (int c = 0; c < target_width; ++c) {
            cells[static_cast<std::size_t>(r) * target_width + c] =
                mask.transparent(r % mask.height(), c % mask.width()) ? 1 : 0;
        }
    }
    return QuarterMask(target_height, target_width, std::move(cells));
}

boost::multiprecision::cpp_int mask_space_size(int b) {
    if (b < 2 || b % 2 != 0) {
        throw ValidationError("mask side length must be even and >= 2");
    }
    return boost::multiprecision::pow(boost::multiprecision::cpp_int(4), (b * b) / 4);
}

std::string serialize(const QuarterMask& mask) {
    std::ostringstream out;
    out << "QSM1 " << mask.height() << ' ' << mask.width() << '\n';
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            out << (mask.transparent(r, c) ? '1' : '0');
        }
        out << '\n';
    }
    return out.str();
}

QuarterMask parse_mask(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    std::istringstream head(header);
    std::string magic;
    int height = 0;
    int width = 0;
    if (!(head >> magic >> height >> width) || magic != "QSM1") {
        throw ParseError("expected header 'QSM1 <height> <width>', got '" + header + "'");
    }
    if (height < 2 || width < 2 || height % 2 != 0 || width % 2 != 0) {
        throw ParseError("mask dimensions must be even and >= 2");
    }
    std::vector<std::uint8_t> cells;
    cells.reserve(static_cast<std::size_t>(height) * width);
    std::string line;
    for (int r = 0; r < height; ++r) {
        if (!std::getline(in, line)) {
            throw ParseError("unexpected end of mask at row " + std::to_string(r));
        }
        if (static_cast<int>(line.size()) != width) {
            throw ParseError("row " + std::to_string(r) + " has " +
                             std::to_string(line.size()) + " characters, expected " +
                             std::to_string(width));
        }
        for (char ch : line) {
            if (ch != '0' && ch != '1') {
                throw ParseError(std::string("invalid character '") + ch + "' in row " +
                                 std::to_string(r));
            }
            cells.push_back(ch == '1' ? 1 : 0);
        }
    }
    try {
        return QuarterMask(height, width, std::move(cells));
    } catch (const ValidationError& err) {
        throw ParseError(err.what());
    }
}

QuarterMask load_mask(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open mask file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_mask(buf.str());
}

void save_mask(const QuarterMask& mask, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write mask file: " + path);
    }
    out << serialize(mask);
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

}  // namespace qs

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qs/errors.hpp"

namespace qs {

// Binary transparency grid on the high resolution pixel grid. Every aligned
// 2x2 quarter-block holds exactly one transparent pixel, so exactly one
// quarter of the grid is sensed. Immutable after construction.
class QuarterMask {
public:
    // Builds from a row-major grid (1 = transparent, 0 = masked) and
    // validates the quarter-sampling condition.
    QuarterMask(int height, int width, std::vector<std::uint8_t> cells);

    int height() const { return height_; }
    int width() const { return width_; }

    bool transparent(int row, int col) const {
        return cells_[static_cast<std::size_t>(row) * width_ + col] != 0;
    }

    // Wraps coordinates into the mask period before lookup.
    bool transparent_periodic(int row, int col) const {
        row %= height_;
        if (row < 0) row += height_;
        col %= width_;
        if (col < 0) col += width_;
        return transparent(row, col);
    }

    std::size_t transparent_count() const;
    const std::vector<std::uint8_t>& cells() const { return cells_; }

    bool operator==(const QuarterMask& other) const = default;

private:
    int height_;
    int width_;
    std::vector<std::uint8_t> cells_;
};

enum class Corner { TopLeft, TopRight, BottomLeft, BottomRight };

// Regular mask: the transparent pixel sits in the same corner of every
// quarter-block.
QuarterMask make_regular(int height, int width, Corner corner);

// Random mask: each quarter-block gets its transparent pixel uniformly at
// one of the four positions. Reproducible for a fixed seed.
QuarterMask make_random(int height, int width, std::uint64_t seed);

// Periodic tiling, cropped to the (even) target size.
QuarterMask tile_to(const QuarterMask& mask, int target_height, int target_width);

// Number of distinct b x b quarter sampling masks: 4^(b^2/4).
boost::multiprecision::cpp_int mask_space_size(int b);

// Text format: "QSM1 <height> <width>\n" then one '0'/'1' line per row.
std::string serialize(const QuarterMask& mask);
QuarterMask parse_mask(const std::string& text);

QuarterMask load_mask(const std::string& path);
void save_mask(const QuarterMask& mask, const std::string& path);

}  // namespace qs

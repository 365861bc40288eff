#pragma once

#include <string>
#include <vector>

#include "qs/errors.hpp"

namespace qs {

// Grayscale image with real-valued intensities in [0, 255]. Quantization to
// 8 bit happens only at file boundaries.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int height, int width, double fill = 0.0);
    GrayImage(int height, int width, std::vector<double> values);

    int height() const { return height_; }
    int width() const { return width_; }

    double at(int row, int col) const {
        return values_[static_cast<std::size_t>(row) * width_ + col];
    }
    double& at(int row, int col) {
        return values_[static_cast<std::size_t>(row) * width_ + col];
    }

    const std::vector<double>& values() const { return values_; }

    bool operator==(const GrayImage&) const = default;

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<double> values_;
};

// Reads binary PGM (P5). P6 color input is reduced with the Rec.601 luma
// weights 0.299/0.587/0.114. maxval must be 255.
GrayImage read_image(const std::string& path);

// Writes binary PGM (P5, maxval 255); values are clamped and rounded.
void write_pgm(const GrayImage& image, const std::string& path);

// Drops one trailing row/column to make dimensions even (centered crop:
// removes the last row/col).
GrayImage crop_to_even(const GrayImage& image);

}  // namespace qs

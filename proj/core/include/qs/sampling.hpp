#pragma once

#include "qs/image.hpp"
#include "qs/mask.hpp"

namespace qs {

// Result of simulated quarter-sampled acquisition: intensities are known
// only at the transparent positions of the (image-sized) mask.
struct SampledImage {
    QuarterMask mask;           // tiled to image size
    GrayImage values;           // meaningful at transparent positions only

    int height() const { return mask.height(); }
    int width() const { return mask.width(); }
    bool known(int row, int col) const { return mask.transparent(row, col); }
};

// Tiles the mask to the image size and keeps the intensities at transparent
// positions. Image dimensions must be even.
SampledImage subsample(const GrayImage& image, const QuarterMask& mask);

// Low resolution sensor model: each output pixel is the mean of an aligned
// 2x2 input block.
GrayImage box_downscale_2x2(const GrayImage& image);

}  // namespace qs

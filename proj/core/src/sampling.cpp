#include "qs/sampling.hpp"

namespace qs {

SampledImage subsample(const GrayImage& image, const QuarterMask& mask) {
    if (image.height() % 2 != 0 || image.width() % 2 != 0) {
        throw ValidationError("image dimensions must be even for quarter sampling");
    }
    QuarterMask tiled = tile_to(mask, image.height(), image.width());
    GrayImage values(image.height(), image.width(), 0.0);
    for (int r = 0; r < image.height(); ++r) {
        for (int c = 0; c < image.width(); ++c) {
            if (tiled.transparent(r, c)) {
                values.at(r, c) = image.at(r, c);
            }
        }
    }
    return SampledImage{std::move(tiled), std::move(values)};
}

GrayImage box_downscale_2x2(const GrayImage& image) {
    if (image.height() % 2 != 0 || image.width() % 2 != 0) {
        throw ValidationError("box downscale requires even dimensions");
    }
    GrayImage out(image.height() / 2, image.width() / 2);
    for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < out.width(); ++c) {
            out.at(r, c) = 0.25 * (image.at(2 * r, 2 * c) + image.at(2 * r, 2 * c + 1) +
                                   image.at(2 * r + 1, 2 * c) + image.at(2 * r + 1, 2 * c + 1));
        }
    }
    return out;
}

}  // namespace qs

#include "qs/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reconstruct_internal.hpp"

namespace qs {

void FsrParams::validate() const {
    if (block_size < 1 || border < 0 || transform_size < 1 || iterations < 1) {
        throw ValidationError("FSR sizes and iteration count must be positive");
    }
    if (block_size + 2 * border != transform_size) {
        throw ValidationError("FSR requires block_size + 2*border == transform_size");
    }
    if (!(rho > 0.0 && rho < 1.0)) {
        throw ValidationError("FSR rho must be in (0,1)");
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw ValidationError("FSR gamma must be in (0,1]");
    }
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw ValidationError("FSR delta must be in [0,1)");
    }
}

namespace detail {

// Nearest known pixel by Euclidean distance; ties by smaller candidate row,
// then column. Scans Chebyshev rings outward; after the first hit, rings up
// to the Euclidean bound are still checked.
Coord2 nearest_known(const SampledImage& sampled, int row, int col) {
    const int h = sampled.height();
    const int w = sampled.width();
    long best_d2 = std::numeric_limits<long>::max();
    int best_r = -1;
    int best_c = -1;
    const auto consider = [&](int r, int c) {
        if (r < 0 || r >= h || c < 0 || c >= w || !sampled.known(r, c)) return;
        const long dr = r - row;
        const long dc = c - col;
        const long d2 = dr * dr + dc * dc;
        if (d2 < best_d2 || (d2 == best_d2 && (r < best_r || (r == best_r && c < best_c)))) {
            best_d2 = d2;
            best_r = r;
            best_c = c;
        }
    };
    if (sampled.known(row, col)) return {row, col};
    const int max_ring = std::max(h, w);
    for (int ring = 1; ring <= max_ring; ++ring) {
        if (best_r >= 0) {
            // A hit exists; farther rings cannot beat it once ring^2 > best_d2.
            if (static_cast<long>(ring) * ring > best_d2) break;
        }
        for (int c = col - ring; c <= col + ring; ++c) {
            consider(row - ring, c);
            consider(row + ring, c);
        }
        for (int r = row - ring + 1; r <= row + ring - 1; ++r) {
            consider(r, col - ring);
            consider(r, col + ring);
        }
    }
    return {best_r, best_c};
}

}  // namespace detail

GrayImage reconstruct_nearest(const SampledImage& sampled) {
    if (sampled.mask.transparent_count() == 0) {
        throw ValidationError("nearest-neighbor reconstruction needs at least one known pixel");
    }
    GrayImage out(sampled.height(), sampled.width());
    for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < out.width(); ++c) {
            const detail::Coord2 p = detail::nearest_known(sampled, r, c);
            out.at(r, c) = sampled.values.at(p.row, p.col);
        }
    }
    return out;
}

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::Nearest: return "nearest";
        case Algorithm::Linear: return "linear";
        case Algorithm::Fsr: return "fsr";
    }
    return "?";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "nearest") return Algorithm::Nearest;
    if (name == "linear") return Algorithm::Linear;
    if (name == "fsr") return Algorithm::Fsr;
    throw ValidationError("unknown reconstruction algorithm: " + name);
}

GrayImage reconstruct(const SampledImage& sampled, Algorithm algorithm,
                      const FsrParams& params) {
    switch (algorithm) {
        case Algorithm::Nearest: return reconstruct_nearest(sampled);
        case Algorithm::Linear: return reconstruct_linear(sampled);
        case Algorithm::Fsr: return reconstruct_fsr(sampled, params);
    }
    throw ValidationError("unknown reconstruction algorithm");
}

}  // namespace qs

#pragma once

#include "qs/sampling.hpp"

namespace qs::detail {

struct Coord2 {
    int row;
    int col;
};

Coord2 nearest_known(const SampledImage& sampled, int row, int col);

}  // namespace qs::detail

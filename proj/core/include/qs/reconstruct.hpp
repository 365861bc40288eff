#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qs/sampling.hpp"

namespace qs {

// Frequency selective reconstruction parameters. The window of
// transform_size x transform_size pixels is centered on each
// block_size x block_size block, i.e. block_size + 2*border == transform_size.
struct FsrParams {
    int block_size = 4;
    int border = 14;
    int transform_size = 32;
    int iterations = 100;
    double rho = 0.7;     // spatial weight decay per pixel of distance
    double gamma = 0.5;   // orthogonality deficiency compensation
    double delta = 0.5;   // weight factor for already reconstructed pixels

    void validate() const;
};

// Every pixel takes the value of its nearest known pixel (Euclidean
// distance, ties by smaller row then smaller column of the candidate).
GrayImage reconstruct_nearest(const SampledImage& sampled);

// Barycentric interpolation over a Delaunay triangulation of the known
// pixels; outside the convex hull falls back to nearest-neighbor. Requires
// at least 3 non-collinear known pixels.
GrayImage reconstruct_linear(const SampledImage& sampled);

// Block-wise greedy sparse approximation in the 2-D Fourier basis with
// rho^distance weighting; unknown pixels of each block are filled from the
// selected atoms. Blocks are processed in raster order; pixels reconstructed
// by earlier blocks enter later windows with weight factor delta.
GrayImage reconstruct_fsr(const SampledImage& sampled, const FsrParams& params = {});

enum class Algorithm { Nearest, Linear, Fsr };

std::string to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);

GrayImage reconstruct(const SampledImage& sampled, Algorithm algorithm,
                      const FsrParams& params = {});

// One FSR window in isolation; exposed for diagnostics. values and weights
// are size x size row-major; weight 0 marks pixels excluded from the
// approximation. Returns the model evaluated over the whole window and, when
// track_energy is set, the weighted residual energy after every iteration.
struct FsrWindowResult {
    std::vector<double> model;
    std::vector<double> residual_energy;
};

FsrWindowResult fsr_approximate_window(const std::vector<double>& values,
                                       const std::vector<double>& weights, int size,
                                       int iterations, double gamma,
                                       bool track_energy = false);

}  // namespace qs

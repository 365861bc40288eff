#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "qs/reconstruct.hpp"

namespace qs {

namespace {

using Complex = std::complex<double>;

// Plans are cached per transform size and reused via fftw_execute_dft.
// FFTW_UNALIGNED keeps execution valid for arbitrary array addresses; plan
// creation is not thread-safe and stays behind the mutex.
struct FftPlans {
    fftw_plan forward;
    fftw_plan backward;
};

FftPlans& plans_for(int size) {
    static std::mutex mutex;
    static std::map<int, FftPlans> cache;
    std::scoped_lock lock(mutex);
    auto it = cache.find(size);
    if (it == cache.end()) {
        const std::size_t n = static_cast<std::size_t>(size) * size;
        std::vector<Complex> buf(n);
        auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
        FftPlans plans;
        plans.forward = fftw_plan_dft_2d(size, size, raw, raw, FFTW_FORWARD,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans.backward = fftw_plan_dft_2d(size, size, raw, raw, FFTW_BACKWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        it = cache.emplace(size, plans).first;
    }
    return it->second;
}

void fft2(fftw_plan plan, std::vector<Complex>& in, std::vector<Complex>& out) {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

FsrWindowResult fsr_approximate_window(const std::vector<double>& values,
                                       const std::vector<double>& weights, int size,
                                       int iterations, double gamma, bool track_energy) {
    const int t = size;
    const std::size_t n = static_cast<std::size_t>(t) * t;
    if (values.size() != n || weights.size() != n) {
        throw ValidationError("FSR window buffers do not match the transform size");
    }
    FftPlans& plans = plans_for(t);

    // Spectra of w and w.*r; with |phi_k| == 1 everywhere, every atom's
    // weighted norm equals sum(w), so the weighted projection of the residual
    // onto atom k is simply Rhat[k] / w_total.
    std::vector<Complex> scratch(n);
    std::vector<Complex> w_hat(n);
    std::vector<Complex> r_hat(n);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = weights[i];
    fft2(plans.forward, scratch, w_hat);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = weights[i] * values[i];
    fft2(plans.forward, scratch, r_hat);

    const double w_total = w_hat[0].real();
    FsrWindowResult result;
    std::vector<Complex> coeff(n, Complex{0.0, 0.0});
    std::vector<double> residual;
    if (track_energy) {
        residual.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            residual[i] = weights[i] > 0.0 ? values[i] : 0.0;
        }
        result.residual_energy.reserve(iterations);
    }
    if (w_total <= 0.0) {
        result.model.assign(n, 0.0);
        return result;
    }

    const auto wrap_index = [t](int kr, int kc) {
        kr %= t;
        if (kr < 0) kr += t;
        kc %= t;
        if (kc < 0) kc += t;
        return static_cast<std::size_t>(kr) * t + kc;
    };

    // Frequency prior for atom selection: natural images concentrate energy
    // at low frequencies, and on near-lattice sampling patterns an atom and
    // its aliases have (almost) identical weighted projections. Biasing the
    // selection toward low frequencies resolves those ties toward the
    // perceptually correct candidate. Projections and residual updates are
    // unaffected.
    std::vector<double> prior(n);
    const double d_max = std::hypot(t / 2.0, t / 2.0);
    for (int r = 0; r < t; ++r) {
        for (int c = 0; c < t; ++c) {
            const int sr = r <= t / 2 ? r : r - t;
            const int sc = c <= t / 2 ? c : c - t;
            const double rel = 1.0 - std::hypot(sr, sc) / d_max;
            prior[static_cast<std::size_t>(r) * t + c] = rel * rel;
        }
    }

    for (int iter = 0; iter < iterations; ++iter) {
        std::size_t best = 0;
        double best_energy = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double e = prior[k] * std::norm(r_hat[k]);
            if (e > best_energy) {
                best_energy = e;
                best = k;
            }
        }
        if (best_energy <= 0.0) break;  // residual orthogonal to every atom

        const int kr = static_cast<int>(best) / t;
        const int kc = static_cast<int>(best) % t;
        const std::size_t conj_k = wrap_index(-kr, -kc);
        const Complex p = gamma * r_hat[best] / w_total;

        coeff[best] += p;
        if (conj_k != best) coeff[conj_k] += std::conj(p);
        // Subtracting p*phi_k (+ conjugate pair) from the residual shifts the
        // weight spectrum: Rhat[k] -= p * What[k - k*].
        for (int r = 0; r < t; ++r) {
            for (int c = 0; c < t; ++c) {
                const std::size_t k = static_cast<std::size_t>(r) * t + c;
                Complex d = p * w_hat[wrap_index(r - kr, c - kc)];
                if (conj_k != best) {
                    d += std::conj(p) * w_hat[wrap_index(r + kr, c + kc)];
                }
                r_hat[k] -= d;
            }
        }
        if (track_energy) {
            const double two_pi = 2.0 * std::acos(-1.0);
            for (int r = 0; r < t; ++r) {
                for (int c = 0; c < t; ++c) {
                    const double phase = two_pi * (static_cast<double>(kr) * r +
                                                   static_cast<double>(kc) * c) / t;
                    const Complex atom{std::cos(phase), std::sin(phase)};
                    Complex d = p * atom;
                    if (conj_k != best) d += std::conj(p) * std::conj(atom);
                    residual[static_cast<std::size_t>(r) * t + c] -= d.real();
                }
            }
            double energy = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                energy += weights[i] * residual[i] * residual[i];
            }
            result.residual_energy.push_back(energy);
        }
    }

    // Model g = sum_k c_k phi_k: the unnormalized inverse transform.
    std::vector<Complex> model_c(n);
    fft2(plans.backward, coeff, model_c);
    result.model.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.model[i] = model_c[i].real();
    }
    return result;
}

GrayImage reconstruct_fsr(const SampledImage& sampled, const FsrParams& params) {
    params.validate();
    const int h = sampled.height();
    const int w = sampled.width();
    const int t = params.transform_size;
    const int b = params.block_size;
    const std::size_t n = static_cast<std::size_t>(t) * t;

    // rho^distance from the window center, precomputed once.
    std::vector<double> base_weight(n);
    const double center = (t - 1) / 2.0;
    for (int r = 0; r < t; ++r) {
        for (int c = 0; c < t; ++c) {
            const double dist = std::hypot(r - center, c - center);
            base_weight[static_cast<std::size_t>(r) * t + c] = std::pow(params.rho, dist);
        }
    }

    enum : std::uint8_t { kUnknown = 0, kKnown = 1, kReconstructed = 2 };
    std::vector<std::uint8_t> state(static_cast<std::size_t>(h) * w, kUnknown);
    GrayImage work(h, w, 0.0);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (sampled.known(r, c)) {
                state[static_cast<std::size_t>(r) * w + c] = kKnown;
                work.at(r, c) = sampled.values.at(r, c);
            }
        }
    }

    std::vector<double> win_values(n);
    std::vector<double> win_weights(n);
    for (int block_r = 0; block_r < h; block_r += b) {
        for (int block_c = 0; block_c < w; block_c += b) {
            const int r0 = block_r - params.border;
            const int c0 = block_c - params.border;
            bool any_unknown = false;
            for (int r = block_r; r < std::min(block_r + b, h); ++r) {
                for (int c = block_c; c < std::min(block_c + b, w); ++c) {
                    any_unknown |= state[static_cast<std::size_t>(r) * w + c] == kUnknown;
                }
            }
            if (!any_unknown) continue;

            for (int i = 0; i < t; ++i) {
                for (int j = 0; j < t; ++j) {
                    const std::size_t k = static_cast<std::size_t>(i) * t + j;
                    const int r = r0 + i;
                    const int c = c0 + j;
                    if (r < 0 || r >= h || c < 0 || c >= w) {
                        win_values[k] = 0.0;
                        win_weights[k] = 0.0;  // outside the image: excluded
                        continue;
                    }
                    switch (state[static_cast<std::size_t>(r) * w + c]) {
                        case kKnown:
                            win_values[k] = work.at(r, c);
                            win_weights[k] = base_weight[k];
                            break;
                        case kReconstructed:
                            win_values[k] = work.at(r, c);
                            win_weights[k] = params.delta * base_weight[k];
                            break;
                        default:
                            win_values[k] = 0.0;
                            win_weights[k] = 0.0;
                            break;
                    }
                }
            }
            const FsrWindowResult window = fsr_approximate_window(
                win_values, win_weights, t, params.iterations, params.gamma);
            for (int r = block_r; r < std::min(block_r + b, h); ++r) {
                for (int c = block_c; c < std::min(block_c + b, w); ++c) {
                    std::uint8_t& st = state[static_cast<std::size_t>(r) * w + c];
                    if (st != kUnknown) continue;
                    const std::size_t k =
                        static_cast<std::size_t>(r - r0) * t + (c - c0);
                    work.at(r, c) = std::clamp(window.model[k], 0.0, 255.0);
                    st = kReconstructed;
                }
            }
        }
    }
    return work;
}

}  // namespace qs

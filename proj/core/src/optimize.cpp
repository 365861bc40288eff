#include "qs/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qs {

void OptimizerConfig::validate() const {
    if (fraction_low <= 0.0 || fraction_high > 1.0 || fraction_low > fraction_high) {
        throw ValidationError("fraction bounds must satisfy 0 < low <= high <= 1");
    }
    if (max_steps < 1) {
        throw ValidationError("max_steps must be >= 1");
    }
    bool any = false;
    for (bool b : enabled_kinds) any = any || b;
    if (!any) {
        throw ValidationError("at least one structure kind must be enabled");
    }
}

QuarterMask removal_step(const QuarterMask& mask, const StructureInstance& instance,
                         std::mt19937_64& rng) {
    if (!instance_consistent(mask, instance)) {
        throw StaleInstanceError("structure instance does not match mask state");
    }
    std::uniform_int_distribution<std::size_t> pick_pixel(0, instance.pixels.size() - 1);
    const Coord p = instance.pixels[pick_pixel(rng)];
    const int block_r = (p.row / 2) * 2;
    const int block_c = (p.col / 2) * 2;
    std::uniform_int_distribution<int> pick_pos(0, 3);
    const int pos = pick_pos(rng);

    std::vector<std::uint8_t> cells = mask.cells();
    const auto idx = [&](int r, int c) { return static_cast<std::size_t>(r) * mask.width() + c; };
    cells[idx(block_r, block_c)] = 0;
    cells[idx(block_r, block_c + 1)] = 0;
    cells[idx(block_r + 1, block_c)] = 0;
    cells[idx(block_r + 1, block_c + 1)] = 0;
    cells[idx(block_r + pos / 2, block_c + pos % 2)] = 1;
    return QuarterMask(mask.height(), mask.width(), std::move(cells));
}

OptimizeResult optimize_until_structure_free(const QuarterMask& mask,
                                             const OptimizerConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    QuarterMask current = mask;
    QuarterMask best = mask;
    std::size_t best_total = std::numeric_limits<std::size_t>::max();
    OptimizerTrace trace;

    for (std::uint64_t step = 0;; ++step) {
        const std::vector<StructureInstance> instances = detect(current, config.enabled_kinds);
        if (config.record_trace) {
            TraceRow row;
            row.step = step;
            for (const StructureInstance& inst : instances) {
                ++row.counts[static_cast<int>(inst.kind)];
            }
            row.removal_attempts = instances.empty() ? 0 : 1;
            trace.push_back(row);
        }
        if (instances.empty()) {
            return OptimizeResult{std::move(current), std::move(trace), true, step};
        }
        if (instances.size() < best_total) {
            best_total = instances.size();
            best = current;
        }
        if (step >= config.max_steps) {
            return OptimizeResult{std::move(best), std::move(trace), false, step};
        }
        std::uniform_int_distribution<std::size_t> pick(0, instances.size() - 1);
        current = removal_step(current, instances[pick(rng)], rng);
    }
}

std::vector<FractionalStep> optimize_fractional(const QuarterMask& mask,
                                                const OptimizerConfig& config,
                                                std::uint64_t num_steps) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::vector<FractionalStep> out;
    out.reserve(num_steps + 1);

    QuarterMask current = mask;
    {
        TraceRow row;
        row.step = 0;
        for (const StructureInstance& inst : detect(current, config.enabled_kinds)) {
            ++row.counts[static_cast<int>(inst.kind)];
        }
        out.push_back(FractionalStep{current, row});
    }
    for (std::uint64_t step = 1; step <= num_steps; ++step) {
        std::vector<StructureInstance> instances = detect(current, config.enabled_kinds);
        TraceRow row;
        row.step = step;
        for (const StructureInstance& inst : instances) {
            ++row.counts[static_cast<int>(inst.kind)];
        }
        if (!instances.empty()) {
            std::uniform_real_distribution<double> frac(config.fraction_low,
                                                        config.fraction_high);
            const std::size_t take = static_cast<std::size_t>(
                std::ceil(frac(rng) * static_cast<double>(instances.size())));
            // Draw without replacement: partial Fisher-Yates, apply in draw order.
            std::vector<std::size_t> order(instances.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            for (std::size_t i = 0; i < take; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
                std::swap(order[i], order[pick(rng)]);
                const StructureInstance& inst = instances[order[i]];
                if (!instance_consistent(current, inst)) continue;  // stale within step
                current = removal_step(current, inst, rng);
                ++row.removal_attempts;
            }
        }
        out.push_back(FractionalStep{current, row});
    }
    return out;
}

}  // namespace qs

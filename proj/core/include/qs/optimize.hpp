#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qs/mask.hpp"
#include "qs/structure.hpp"

namespace qs {

enum class OptimizeMode { UntilStructureFree, Fractional };

struct OptimizerConfig {
    std::uint64_t seed = 0;
    KindSet enabled_kinds = all_kinds_enabled();
    OptimizeMode mode = OptimizeMode::UntilStructureFree;
    double fraction_low = 0.05;   // fractional mode: share of structures removed per step
    double fraction_high = 0.10;
    std::uint64_t max_steps = 1'000'000;
    bool record_trace = false;

    void validate() const;
};

struct TraceRow {
    std::uint64_t step = 0;
    KindCounts counts{};          // structure counts before the step
    std::size_t removal_attempts = 0;
};

using OptimizerTrace = std::vector<TraceRow>;

// One application of steps (B)-(D): pick a contributing pixel of the
// instance uniformly, mask its whole quarter-block, then unmask one of the
// four block positions uniformly. Throws StaleInstanceError when the
// instance no longer matches the mask.
QuarterMask removal_step(const QuarterMask& mask, const StructureInstance& instance,
                         std::mt19937_64& rng);

struct OptimizeResult {
    QuarterMask mask;
    OptimizerTrace trace;
    bool structure_free = false;
    std::uint64_t steps_used = 0;
};

// Re-detects after every removal; picks one instance uniformly per step.
// Returns the first structure-free mask, or the best mask seen (lowest total
// count, earliest) with structure_free=false when max_steps runs out.
OptimizeResult optimize_until_structure_free(const QuarterMask& mask,
                                             const OptimizerConfig& config);

struct FractionalStep {
    QuarterMask mask;             // snapshot after the step (step 0 = initial mask)
    TraceRow trace;
};

// Fractional mode: per step, one detection pass; ceil(f*N) instances are
// drawn without replacement (f uniform in [fraction_low, fraction_high]) and
// removed in draw order, skipping instances gone stale within the step.
// Returns num_steps+1 snapshots including the initial mask.
std::vector<FractionalStep> optimize_fractional(const QuarterMask& mask,
                                                const OptimizerConfig& config,
                                                std::uint64_t num_steps);

}  // namespace qs

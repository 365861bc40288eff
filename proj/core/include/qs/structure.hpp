#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qs/mask.hpp"

namespace qs {

// The six local patterns that hurt mask uniformity or create local
// regularity. 2-spx / 4-spx are transparent superpixels, 8-void is a large
// masked area, the remaining three are locally regular arrangements of
// transparent pixels.
enum class StructureKind : int {
    TwoSpx = 0,
    FourSpx,
    EightVoid,
    ThreeRegular,
    ThreeDiag,
    FiveZigzag,
};

inline constexpr int kStructureKindCount = 6;

inline constexpr std::array<StructureKind, kStructureKindCount> all_structure_kinds = {
    StructureKind::TwoSpx,     StructureKind::FourSpx,  StructureKind::EightVoid,
    StructureKind::ThreeRegular, StructureKind::ThreeDiag, StructureKind::FiveZigzag,
};

// Short names used in CSV headers and CLI flags: 2spx, 4spx, 8void,
// 3regular, 3diag, 5zigzag.
std::string to_string(StructureKind kind);
StructureKind structure_kind_from_string(const std::string& name);

// Number of pixels listed per instance of each kind.
int structure_pixel_count(StructureKind kind);

struct Coord {
    int row = 0;
    int col = 0;
    auto operator<=>(const Coord&) const = default;
};

// One detected occurrence. Pixels are reduced modulo the mask dimensions and
// sorted; the anchor is pixels.front(). For EightVoid the listed pixels are
// masked, for all other kinds they are transparent.
struct StructureInstance {
    StructureKind kind;
    std::vector<Coord> pixels;

    const Coord& anchor() const { return pixels.front(); }
    auto operator<=>(const StructureInstance&) const = default;
};

using KindSet = std::array<bool, kStructureKindCount>;

inline constexpr KindSet all_kinds_enabled() {
    return {true, true, true, true, true, true};
}

// Enumerates every distinct occurrence of the requested kinds under periodic
// boundary conditions. Occurrences whose template pixels collapse onto each
// other after modular reduction are suppressed. Output is sorted by kind,
// then anchor, then pixel list; duplicates (same kind, same pixel set) are
// reported once.
std::vector<StructureInstance> detect(const QuarterMask& mask, const KindSet& kinds);

std::vector<StructureInstance> detect_all(const QuarterMask& mask);

using KindCounts = std::array<std::size_t, kStructureKindCount>;

KindCounts count_by_kind(const QuarterMask& mask);

std::size_t total_count(const KindCounts& counts);

// True when the instance still matches the mask (transparency state of every
// listed pixel agrees with its kind).
bool instance_consistent(const QuarterMask& mask, const StructureInstance& instance);

}  // namespace qs

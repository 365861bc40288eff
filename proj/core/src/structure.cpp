#include "qs/structure.hpp"

#include <algorithm>
#include <set>

namespace qs {

std::string to_string(StructureKind kind) {
    switch (kind) {
        case StructureKind::TwoSpx: return "2spx";
        case StructureKind::FourSpx: return "4spx";
        case StructureKind::EightVoid: return "8void";
        case StructureKind::ThreeRegular: return "3regular";
        case StructureKind::ThreeDiag: return "3diag";
        case StructureKind::FiveZigzag: return "5zigzag";
    }
    return "?";
}

StructureKind structure_kind_from_string(const std::string& name) {
    for (StructureKind kind : all_structure_kinds) {
        if (to_string(kind) == name) return kind;
    }
    throw ValidationError("unknown structure kind: " + name);
}

int structure_pixel_count(StructureKind kind) {
    switch (kind) {
        case StructureKind::TwoSpx: return 2;
        case StructureKind::FourSpx: return 4;
        case StructureKind::EightVoid: return 8;
        case StructureKind::ThreeRegular: return 3;
        case StructureKind::ThreeDiag: return 3;
        case StructureKind::FiveZigzag: return 5;
    }
    return 0;
}

namespace {

struct Offset {
    int dr;
    int dc;
};

// One template variant: the listed pixels must all have the given
// transparency state; require_masked lists extra pixels that must be masked
// (only used by 3-regular). The listed pixels become the instance.
struct TemplateVariant {
    std::vector<Offset> pixels;
    std::vector<Offset> require_masked;
    bool pixels_transparent = true;
};

const std::vector<TemplateVariant>& variants_for(StructureKind kind) {
    static const std::vector<TemplateVariant> two_spx = {
        {{{0, 0}, {0, 1}}, {}, true},
        {{{0, 0}, {1, 0}}, {}, true},
    };
    static const std::vector<TemplateVariant> four_spx = {
        {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {}, true},
    };
    static const std::vector<TemplateVariant> eight_void = {
        {{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}, {1, 2}, {1, 3}}, {}, false},
        {{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}}, {}, false},
    };
    static const std::vector<TemplateVariant> three_regular = {
        {{{0, 0}, {0, 3}, {0, 6}}, {{0, 1}, {0, 2}, {0, 4}, {0, 5}}, true},
        {{{0, 0}, {3, 0}, {6, 0}}, {{1, 0}, {2, 0}, {4, 0}, {5, 0}}, true},
    };
    static const std::vector<TemplateVariant> three_diag = {
        {{{0, 0}, {1, 1}, {2, 2}}, {}, true},
        {{{0, 0}, {1, -1}, {2, -2}}, {}, true},
    };
    static const std::vector<TemplateVariant> five_zigzag = {
        {{{0, 0}, {1, 1}, {0, 2}, {1, 3}, {0, 4}}, {}, true},
        {{{0, 0}, {-1, 1}, {0, 2}, {-1, 3}, {0, 4}}, {}, true},
        {{{0, 0}, {1, 1}, {2, 0}, {3, 1}, {4, 0}}, {}, true},
        {{{0, 0}, {1, -1}, {2, 0}, {3, -1}, {4, 0}}, {}, true},
    };
    switch (kind) {
        case StructureKind::TwoSpx: return two_spx;
        case StructureKind::FourSpx: return four_spx;
        case StructureKind::EightVoid: return eight_void;
        case StructureKind::ThreeRegular: return three_regular;
        case StructureKind::ThreeDiag: return three_diag;
        case StructureKind::FiveZigzag: return five_zigzag;
    }
    return two_spx;
}

int wrap(int v, int m) {
    v %= m;
    return v < 0 ? v + m : v;
}

}  // namespace

std::vector<StructureInstance> detect(const QuarterMask& mask, const KindSet& kinds) {
    const int h = mask.height();
    const int w = mask.width();
    std::vector<StructureInstance> out;
    std::vector<Coord> pixels;
    for (StructureKind kind : all_structure_kinds) {
        if (!kinds[static_cast<int>(kind)]) continue;
        std::set<std::vector<Coord>> seen;
        for (const TemplateVariant& variant : variants_for(kind)) {
            for (int r = 0; r < h; ++r) {
                for (int c = 0; c < w; ++c) {
                    bool ok = true;
                    for (const Offset& off : variant.require_masked) {
                        if (mask.transparent(wrap(r + off.dr, h), wrap(c + off.dc, w))) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) continue;
                    pixels.clear();
                    for (const Offset& off : variant.pixels) {
                        const Coord p{wrap(r + off.dr, h), wrap(c + off.dc, w)};
                        if (mask.transparent(p.row, p.col) != variant.pixels_transparent) {
                            ok = false;
                            break;
                        }
                        pixels.push_back(p);
                    }
                    if (!ok) continue;
                    std::sort(pixels.begin(), pixels.end());
                    // Wrapped templates collapsing onto themselves are degenerate.
                    if (std::adjacent_find(pixels.begin(), pixels.end()) != pixels.end()) {
                        continue;
                    }
                    if (seen.insert(pixels).second) {
                        out.push_back(StructureInstance{kind, pixels});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<StructureInstance> detect_all(const QuarterMask& mask) {
    return detect(mask, all_kinds_enabled());
}

KindCounts count_by_kind(const QuarterMask& mask) {
    KindCounts counts{};
    for (const StructureInstance& inst : detect_all(mask)) {
        ++counts[static_cast<int>(inst.kind)];
    }
    return counts;
}

std::size_t total_count(const KindCounts& counts) {
    std::size_t total = 0;
    for (std::size_t n : counts) total += n;
    return total;
}

bool instance_consistent(const QuarterMask& mask, const StructureInstance& instance) {
    const bool want = instance.kind != StructureKind::EightVoid;
    for (const Coord& p : instance.pixels) {
        if (p.row < 0 || p.row >= mask.height() || p.col < 0 || p.col >= mask.width()) {
            return false;
        }
        if (mask.transparent(p.row, p.col) != want) return false;
    }
    return true;
}

}  // namespace qs

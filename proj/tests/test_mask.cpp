#include <doctest.h>

#include <set>

#include "qs/mask.hpp"

using qs::Corner;
using qs::QuarterMask;

namespace {

std::set<std::pair<int, int>> transparent_set(const QuarterMask& mask) {
    std::set<std::pair<int, int>> out;
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.transparent(r, c)) out.emplace(r, c);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("make_regular places the transparent pixel in the requested corner") {
    CHECK(transparent_set(qs::make_regular(2, 2, Corner::TopLeft)) ==
          std::set<std::pair<int, int>>{{0, 0}});
    CHECK(transparent_set(qs::make_regular(4, 4, Corner::TopLeft)) ==
          std::set<std::pair<int, int>>{{0, 0}, {0, 2}, {2, 0}, {2, 2}});
    CHECK(transparent_set(qs::make_regular(4, 4, Corner::BottomRight)) ==
          std::set<std::pair<int, int>>{{1, 1}, {1, 3}, {3, 1}, {3, 3}});
}

TEST_CASE("odd or tiny dimensions are rejected") {
    CHECK_THROWS_AS(qs::make_regular(3, 4, Corner::TopLeft), qs::ValidationError);
    CHECK_THROWS_AS(qs::make_regular(4, 0, Corner::TopLeft), qs::ValidationError);
    CHECK_THROWS_AS(qs::make_random(5, 8, 1), qs::ValidationError);
    CHECK_THROWS_AS(qs::mask_space_size(3), qs::ValidationError);
    CHECK_THROWS_AS(qs::tile_to(qs::make_random(4, 4, 1), 7, 8), qs::ValidationError);
}

TEST_CASE("make_random obeys the quarter condition and is reproducible") {
    const QuarterMask a = qs::make_random(32, 32, 7);
    CHECK(a.transparent_count() == 256);
    CHECK(qs::make_random(8, 8, 5) == qs::make_random(8, 8, 5));
    CHECK(qs::make_random(2, 2, 123).transparent_count() == 1);
}

TEST_CASE("make_random picks each block position uniformly over seeds") {
    std::array<int, 4> hits{};
    const int trials = 10000;
    for (int seed = 0; seed < trials; ++seed) {
        const QuarterMask m = qs::make_random(4, 4, static_cast<std::uint64_t>(seed));
        for (int p = 0; p < 4; ++p) {
            if (m.transparent(p / 2, p % 2)) ++hits[p];
        }
    }
    for (int p = 0; p < 4; ++p) {
        const double freq = static_cast<double>(hits[p]) / trials;
        CHECK(freq == doctest::Approx(0.25).epsilon(0.12));  // 0.25 +- 0.03
    }
}

TEST_CASE("tile_to repeats the mask periodically") {
    const QuarterMask base = qs::make_regular(4, 4, Corner::TopLeft);
    CHECK(qs::tile_to(base, 8, 8) == qs::make_regular(8, 8, Corner::TopLeft));
    CHECK(qs::tile_to(base, 4, 4) == base);

    std::vector<std::uint8_t> cells = {0, 1, 0, 0};
    const QuarterMask tiny(2, 2, cells);
    CHECK(transparent_set(qs::tile_to(tiny, 2, 6)) ==
          std::set<std::pair<int, int>>{{0, 1}, {0, 3}, {0, 5}});
}

TEST_CASE("mask_space_size follows 4^(b^2/4)") {
    CHECK(qs::mask_space_size(2) == 4);
    CHECK(qs::mask_space_size(4) == 256);
    CHECK(qs::mask_space_size(8) == boost::multiprecision::cpp_int("4294967296"));
    CHECK(qs::mask_space_size(16) ==
          boost::multiprecision::pow(boost::multiprecision::cpp_int(2), 128));
}

TEST_CASE("serialize/parse round-trips and validates") {
    CHECK(qs::serialize(qs::make_regular(2, 2, Corner::TopLeft)) == "QSM1 2 2\n10\n00\n");
    CHECK(transparent_set(qs::parse_mask("QSM1 2 2\n10\n00\n")) ==
          std::set<std::pair<int, int>>{{0, 0}});

    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const QuarterMask m = qs::make_random(6, 10, seed);
        CHECK(qs::parse_mask(qs::serialize(m)) == m);
    }

    CHECK_THROWS_AS(qs::parse_mask("QSM1 2 2\n11\n00\n"), qs::ParseError);
    CHECK_THROWS_AS(qs::parse_mask("QSM1 3 2\n10\n00\n10\n"), qs::ParseError);
    CHECK_THROWS_AS(qs::parse_mask("QSM1 2 2\n1x\n00\n"), qs::ParseError);
    CHECK_THROWS_AS(qs::parse_mask("bogus\n"), qs::ParseError);
    CHECK_THROWS_AS(qs::parse_mask("QSM1 4 4\n1000\n0000\n"), qs::ParseError);

    // The violated quarter-block is named in the message.
    try {
        qs::parse_mask("QSM1 2 2\n11\n00\n");
        FAIL("expected ParseError");
    } catch (const qs::ParseError& err) {
        CHECK(std::string(err.what()).find("(0,0)") != std::string::npos);
    }
}

TEST_CASE("transparent density is exactly one quarter") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const QuarterMask m = qs::make_random(10, 14, seed);
        CHECK(m.transparent_count() * 4 ==
              static_cast<std::size_t>(m.height()) * m.width());
    }
}

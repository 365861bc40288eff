#include <doctest.h>

#include <cmath>
#include <limits>

#include "qs/eval.hpp"
#include "qs/sampling.hpp"

using qs::GrayImage;

TEST_CASE("psnr analytics") {
    const GrayImage a(4, 4, 100.0);
    CHECK(std::isinf(qs::psnr(a, a)));

    GrayImage b(4, 4, 0.0);
    GrayImage c(4, 4, 255.0);
    CHECK(qs::psnr(b, c) == doctest::Approx(0.0).epsilon(1e-12));

    GrayImage d(4, 4, 101.0);
    CHECK(qs::psnr(a, d) == doctest::Approx(48.1308).epsilon(1e-3 / 48.1308));
    CHECK(qs::psnr(a, d) == qs::psnr(d, a));

    CHECK_THROWS_AS(qs::psnr(a, GrayImage(4, 6, 0.0)), qs::ValidationError);
}

TEST_CASE("evaluate_mask over a constant corpus gives infinite PSNR") {
    std::vector<qs::CorpusImage> corpus;
    corpus.push_back({"flat_a", GrayImage(16, 16, 30.0)});
    corpus.push_back({"flat_b", GrayImage(16, 16, 200.0)});
    const qs::LabeledMask mask{"random", qs::make_random(8, 8, 1)};
    const auto rows = qs::evaluate_mask(mask, corpus, qs::Algorithm::Nearest);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(std::isinf(row.psnr_db));
        CHECK(row.mask_label == "random");
        CHECK(row.algorithm == "nearest");
    }
}

TEST_CASE("evaluation is deterministic and thread-count independent") {
    std::vector<qs::CorpusImage> corpus;
    for (int i = 0; i < 4; ++i) {
        GrayImage img(16, 16);
        for (int r = 0; r < 16; ++r) {
            for (int c = 0; c < 16; ++c) {
                img.at(r, c) = std::fmod(17.0 * r + 31.0 * c + i * 3.0, 256.0);
            }
        }
        corpus.push_back({"img" + std::to_string(i), img});
    }
    const qs::LabeledMask mask{"m", qs::make_random(8, 8, 4)};
    const auto rows1 = qs::evaluate_mask(mask, corpus, qs::Algorithm::Linear, {}, 1);
    const auto rows2 = qs::evaluate_mask(mask, corpus, qs::Algorithm::Linear, {}, 3);
    REQUIRE(rows1.size() == rows2.size());
    for (std::size_t i = 0; i < rows1.size(); ++i) {
        CHECK(rows1[i].image_id == rows2[i].image_id);
        CHECK(rows1[i].psnr_db == rows2[i].psnr_db);
    }
    CHECK(qs::rows_to_csv(rows1) == qs::rows_to_csv(rows2));
}

TEST_CASE("experiment_table computes gains against the baseline per algorithm") {
    std::vector<qs::CorpusImage> corpus;
    GrayImage img(16, 16);
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            img.at(r, c) = std::fmod(13.0 * r + 29.0 * c + 7.0 * r * c, 256.0);
        }
    }
    corpus.push_back({"texture", img});
    const std::vector<qs::LabeledMask> masks = {
        {"regular", qs::make_regular(8, 8, qs::Corner::TopLeft)},
        {"random", qs::make_random(8, 8, 6)},
    };
    const qs::ExperimentReport report = qs::experiment_table(
        masks, corpus, {qs::Algorithm::Nearest, qs::Algorithm::Linear});
    REQUIRE(report.aggregates.size() == 4);
    for (const auto& agg : report.aggregates) {
        if (agg.mask_label == "random") {
            CHECK(agg.gain_vs_baseline_db == doctest::Approx(0.0));
        }
    }
    // Mean equals the arithmetic mean of the matching rows.
    for (const auto& agg : report.aggregates) {
        double sum = 0.0;
        int n = 0;
        for (const auto& row : report.rows) {
            if (row.mask_label == agg.mask_label && row.algorithm == agg.algorithm) {
                sum += row.psnr_db;
                ++n;
            }
        }
        REQUIRE(n > 0);
        CHECK(agg.mean_psnr_db == doctest::Approx(sum / n));
    }
}

TEST_CASE("stepwise curves share the step-0 point across variants") {
    std::vector<qs::CorpusImage> corpus;
    GrayImage img(32, 32);
    for (int r = 0; r < 32; ++r) {
        for (int c = 0; c < 32; ++c) {
            img.at(r, c) = std::fmod(7.0 * r * r + 3.0 * c, 256.0);
        }
    }
    corpus.push_back({"tex", img});
    const qs::QuarterMask initial = qs::make_random(32, 32, 10);
    qs::OptimizerConfig all;
    all.mode = qs::OptimizeMode::Fractional;
    qs::OptimizerConfig voids_only;
    voids_only.mode = qs::OptimizeMode::Fractional;
    voids_only.enabled_kinds = {};
    voids_only.enabled_kinds[static_cast<int>(qs::StructureKind::EightVoid)] = true;
    const auto curve = qs::experiment_stepwise(initial, {all, voids_only},
                                               {"all", "8void"}, corpus,
                                               qs::Algorithm::Nearest, 3);
    REQUIRE(curve.size() == 8);
    CHECK(curve[0].variant == "all");
    CHECK(curve[0].step == 0);
    CHECK(curve[4].variant == "8void");
    CHECK(curve[4].step == 0);
    CHECK(curve[0].mean_psnr_db == curve[4].mean_psnr_db);
}

TEST_CASE("CSV formats") {
    std::vector<qs::ReportRow> rows = {
        {"m1", "fsr", "img1", 33.123456},
        {"m1", "fsr", "img2", std::numeric_limits<double>::infinity()},
    };
    CHECK(qs::rows_to_csv(rows) ==
          "mask,algorithm,image,psnr_db\n"
          "m1,fsr,img1,33.123456\n"
          "m1,fsr,img2,inf\n");

    qs::OptimizerTrace trace(1);
    trace[0].step = 0;
    trace[0].counts = {1, 2, 3, 4, 5, 6};
    CHECK(qs::trace_to_csv(trace) ==
          "step,count_2spx,count_4spx,count_8void,count_3regular,count_3diag,"
          "count_5zigzag\n0,1,2,3,4,5,6\n");

    CHECK(qs::curve_to_csv({{"all", 2, 31.5}}) ==
          "variant,step,mean_psnr_db\nall,2,31.500000\n");
}

TEST_CASE("empty corpus is rejected") {
    const qs::LabeledMask mask{"m", qs::make_random(4, 4, 0)};
    CHECK_THROWS_AS(qs::evaluate_mask(mask, {}, qs::Algorithm::Nearest),
                    qs::ValidationError);
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qs/image.hpp"
#include "qs/mask.hpp"
#include "qs/optimize.hpp"
#include "qs/reconstruct.hpp"

namespace qs {

// Peak 255. Identical images yield +infinity.
double psnr(const GrayImage& reference, const GrayImage& test);

struct LabeledMask {
    std::string label;
    QuarterMask mask;
};

struct CorpusImage {
    std::string id;     // file stem
    GrayImage image;    // even-dimensioned (odd inputs cropped)
};

// Loads every .pgm/.ppm in the directory, sorted lexicographically by file
// name. limit, when set, keeps only the first images.
std::vector<CorpusImage> load_corpus(const std::string& dir,
                                     std::optional<std::size_t> limit = std::nullopt);

struct ReportRow {
    std::string mask_label;
    std::string algorithm;
    std::string image_id;
    double psnr_db;
};

struct ReportAggregate {
    std::string mask_label;
    std::string algorithm;
    double mean_psnr_db;
    double gain_vs_baseline_db;   // NaN when no baseline designated
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    std::vector<ReportAggregate> aggregates;
};

// Tile, subsample, reconstruct and score one mask over the corpus.
// threads > 1 fans out per image; aggregation order is deterministic.
std::vector<ReportRow> evaluate_mask(const LabeledMask& mask,
                                     const std::vector<CorpusImage>& corpus,
                                     Algorithm algorithm, const FsrParams& params = {},
                                     int threads = 1);

double mean_psnr(const std::vector<ReportRow>& rows);

// Full cross product masks x algorithms x images, with gains relative to the
// mask labeled baseline_label (per algorithm).
ExperimentReport experiment_table(const std::vector<LabeledMask>& masks,
                                  const std::vector<CorpusImage>& corpus,
                                  const std::vector<Algorithm>& algorithms,
                                  const std::string& baseline_label = "random",
                                  const FsrParams& params = {}, int threads = 1);

struct StepwisePoint {
    std::string variant;
    std::uint64_t step;
    double mean_psnr_db;
};

// Runs optimize_fractional per variant and scores every snapshot mask on the
// corpus. Step 0 is the unmodified initial mask for every variant.
std::vector<StepwisePoint> experiment_stepwise(const QuarterMask& initial_mask,
                                               const std::vector<OptimizerConfig>& variants,
                                               const std::vector<std::string>& variant_names,
                                               const std::vector<CorpusImage>& corpus,
                                               Algorithm algorithm, std::uint64_t num_steps,
                                               const FsrParams& params = {}, int threads = 1);

// CSV emission. PSNR values are printed with 6 significant decimals; +inf as "inf".
std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::string aggregates_to_csv(const std::vector<ReportAggregate>& aggregates);
std::string curve_to_csv(const std::vector<StepwisePoint>& points);
std::string trace_to_csv(const OptimizerTrace& trace);

}  // namespace qs

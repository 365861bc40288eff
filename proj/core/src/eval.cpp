#include "qs/eval.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <limits>
#include <sstream>

#include "qs/sampling.hpp"

namespace qs {

double psnr(const GrayImage& reference, const GrayImage& test) {
    if (reference.height() != test.height() || reference.width() != test.width()) {
        throw ValidationError("PSNR requires identical image dimensions");
    }
    double sum_sq = 0.0;
    const std::size_t n = reference.values().size();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = reference.values()[i] - test.values()[i];
        sum_sq += d * d;
    }
    if (sum_sq == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double mse = sum_sq / static_cast<double>(n);
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::vector<CorpusImage> load_corpus(const std::string& dir,
                                     std::optional<std::size_t> limit) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        throw IoError("corpus directory not found: " + dir);
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext == ".pgm" || ext == ".ppm") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    if (limit && files.size() > *limit) {
        files.resize(*limit);
    }
    std::vector<CorpusImage> corpus;
    corpus.reserve(files.size());
    for (const fs::path& path : files) {
        corpus.push_back(CorpusImage{path.stem().string(),
                                     crop_to_even(read_image(path.string()))});
    }
    if (corpus.empty()) {
        throw IoError("corpus directory has no .pgm/.ppm images: " + dir);
    }
    return corpus;
}

namespace {

double score_one(const LabeledMask& mask, const CorpusImage& item, Algorithm algorithm,
                 const FsrParams& params) {
    const SampledImage sampled = subsample(item.image, mask.mask);
    const GrayImage restored = reconstruct(sampled, algorithm, params);
    return psnr(item.image, restored);
}

}  // namespace

std::vector<ReportRow> evaluate_mask(const LabeledMask& mask,
                                     const std::vector<CorpusImage>& corpus,
                                     Algorithm algorithm, const FsrParams& params,
                                     int threads) {
    if (corpus.empty()) {
        throw ValidationError("corpus is empty");
    }
    const std::string alg = to_string(algorithm);
    std::vector<ReportRow> rows(corpus.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            rows[i] = ReportRow{mask.label, alg, corpus[i].id,
                                score_one(mask, corpus[i], algorithm, params)};
        }
        return rows;
    }
    // Bounded fan-out per image; results land at fixed indices, so the
    // aggregation order never depends on scheduling.
    std::vector<std::future<double>> pending(corpus.size());
    std::size_t next = 0;
    std::size_t in_flight = 0;
    std::size_t drain = 0;
    while (drain < corpus.size()) {
        while (next < corpus.size() && in_flight < static_cast<std::size_t>(threads)) {
            pending[next] = std::async(std::launch::async, score_one, std::cref(mask),
                                       std::cref(corpus[next]), algorithm,
                                       std::cref(params));
            ++next;
            ++in_flight;
        }
        rows[drain] = ReportRow{mask.label, alg, corpus[drain].id, pending[drain].get()};
        ++drain;
        --in_flight;
    }
    return rows;
}

double mean_psnr(const std::vector<ReportRow>& rows) {
    if (rows.empty()) {
        throw ValidationError("cannot average an empty report");
    }
    double sum = 0.0;
    for (const ReportRow& row : rows) {
        sum += row.psnr_db;
    }
    return sum / static_cast<double>(rows.size());
}

ExperimentReport experiment_table(const std::vector<LabeledMask>& masks,
                                  const std::vector<CorpusImage>& corpus,
                                  const std::vector<Algorithm>& algorithms,
                                  const std::string& baseline_label,
                                  const FsrParams& params, int threads) {
    ExperimentReport report;
    // mean per (algorithm, mask) for the gain column
    std::vector<std::vector<double>> means(algorithms.size(),
                                           std::vector<double>(masks.size()));
    for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
        for (std::size_t mi = 0; mi < masks.size(); ++mi) {
            std::vector<ReportRow> rows =
                evaluate_mask(masks[mi], corpus, algorithms[ai], params, threads);
            means[ai][mi] = mean_psnr(rows);
            report.rows.insert(report.rows.end(), rows.begin(), rows.end());
        }
    }
    for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
        double baseline = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t mi = 0; mi < masks.size(); ++mi) {
            if (masks[mi].label == baseline_label) baseline = means[ai][mi];
        }
        for (std::size_t mi = 0; mi < masks.size(); ++mi) {
            report.aggregates.push_back(ReportAggregate{
                masks[mi].label, to_string(algorithms[ai]), means[ai][mi],
                means[ai][mi] - baseline});
        }
    }
    return report;
}

std::vector<StepwisePoint> experiment_stepwise(const QuarterMask& initial_mask,
                                               const std::vector<OptimizerConfig>& variants,
                                               const std::vector<std::string>& variant_names,
                                               const std::vector<CorpusImage>& corpus,
                                               Algorithm algorithm, std::uint64_t num_steps,
                                               const FsrParams& params, int threads) {
    if (variants.size() != variant_names.size()) {
        throw ValidationError("one name per optimizer variant is required");
    }
    std::vector<StepwisePoint> points;
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        const std::vector<FractionalStep> steps =
            optimize_fractional(initial_mask, variants[vi], num_steps);
        for (const FractionalStep& step : steps) {
            const LabeledMask labeled{variant_names[vi], step.mask};
            const std::vector<ReportRow> rows =
                evaluate_mask(labeled, corpus, algorithm, params, threads);
            points.push_back(
                StepwisePoint{variant_names[vi], step.trace.step, mean_psnr(rows)});
        }
    }
    return points;
}

namespace {

std::string format_db(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << value;
    return out.str();
}

}  // namespace

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << "mask,algorithm,image,psnr_db\n";
    for (const ReportRow& row : rows) {
        out << row.mask_label << ',' << row.algorithm << ',' << row.image_id << ','
            << format_db(row.psnr_db) << '\n';
    }
    return out.str();
}

std::string aggregates_to_csv(const std::vector<ReportAggregate>& aggregates) {
    std::ostringstream out;
    out << "mask,algorithm,mean_psnr_db,gain_vs_baseline_db\n";
    for (const ReportAggregate& agg : aggregates) {
        out << agg.mask_label << ',' << agg.algorithm << ',' << format_db(agg.mean_psnr_db)
            << ',' << format_db(agg.gain_vs_baseline_db) << '\n';
    }
    return out.str();
}

std::string curve_to_csv(const std::vector<StepwisePoint>& points) {
    std::ostringstream out;
    out << "variant,step,mean_psnr_db\n";
    for (const StepwisePoint& p : points) {
        out << p.variant << ',' << p.step << ',' << format_db(p.mean_psnr_db) << '\n';
    }
    return out.str();
}

std::string trace_to_csv(const OptimizerTrace& trace) {
    std::ostringstream out;
    out << "step,count_2spx,count_4spx,count_8void,count_3regular,count_3diag,"
           "count_5zigzag\n";
    for (const TraceRow& row : trace) {
        out << row.step;
        for (std::size_t count : row.counts) {
            out << ',' << count;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace qs

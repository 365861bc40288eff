// qsmask: quarter sampling mask generation, structure-removal optimization,
// sampling simulation, reconstruction and PSNR experiments.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qs/eval.hpp"
#include "qs/image.hpp"
#include "qs/mask.hpp"
#include "qs/optimize.hpp"
#include "qs/reconstruct.hpp"
#include "qs/sampling.hpp"
#include "qs/structure.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCapReached = 4;

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw qs::IoError("cannot write file: " + path);
    }
    out << content;
    if (!out) {
        throw qs::IoError("write failed: " + path);
    }
}

qs::KindSet parse_kinds(const std::string& spec) {
    if (spec.empty() || spec == "all") {
        return qs::all_kinds_enabled();
    }
    qs::KindSet kinds{};
    std::stringstream in(spec);
    std::string token;
    while (std::getline(in, token, ',')) {
        kinds[static_cast<int>(qs::structure_kind_from_string(token))] = true;
    }
    return kinds;
}

qs::Corner parse_corner(const std::string& name) {
    if (name == "tl") return qs::Corner::TopLeft;
    if (name == "tr") return qs::Corner::TopRight;
    if (name == "bl") return qs::Corner::BottomLeft;
    if (name == "br") return qs::Corner::BottomRight;
    throw qs::ValidationError("corner must be one of tl, tr, bl, br");
}

// "label=path" or bare path (label = file stem).
qs::LabeledMask parse_labeled_mask(const std::string& arg) {
    const std::size_t eq = arg.find('=');
    if (eq != std::string::npos) {
        return qs::LabeledMask{arg.substr(0, eq), qs::load_mask(arg.substr(eq + 1))};
    }
    std::string stem = arg;
    if (const std::size_t slash = stem.find_last_of('/'); slash != std::string::npos) {
        stem = stem.substr(slash + 1);
    }
    if (const std::size_t dot = stem.find_last_of('.'); dot != std::string::npos) {
        stem = stem.substr(0, dot);
    }
    return qs::LabeledMask{stem, qs::load_mask(arg)};
}

struct FsrFlags {
    qs::FsrParams params;
    void attach(CLI::App* cmd) {
        cmd->add_option("--fsr-block-size", params.block_size, "FSR block size");
        cmd->add_option("--fsr-border", params.border, "FSR window border per side");
        cmd->add_option("--fsr-transform-size", params.transform_size, "FSR window size");
        cmd->add_option("--fsr-iterations", params.iterations, "FSR iterations per block");
        cmd->add_option("--fsr-rho", params.rho, "FSR spatial weight decay");
        cmd->add_option("--fsr-gamma", params.gamma, "FSR compensation factor");
        cmd->add_option("--fsr-delta", params.delta, "FSR reconstructed-pixel weight");
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quarter sampling mask toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int threads = 1;
    bool verbose = false;
    bool show_version = false;
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads for the evaluation harness")
        ->capture_default_str();
    app.add_flag("--verbose", verbose, "print progress to stderr");
    app.add_flag("--version", show_version, "print version and defaults");

    // generate
    auto* generate = app.add_subcommand("generate", "create a quarter sampling mask");
    std::string gen_type = "random";
    int gen_size = 32;
    int gen_height = 0;
    int gen_width = 0;
    std::string gen_corner = "tl";
    std::string gen_out;
    generate->add_option("--type", gen_type, "regular or random")->capture_default_str();
    generate->add_option("--size", gen_size, "square mask side length")->capture_default_str();
    generate->add_option("--height", gen_height, "mask height (overrides --size)");
    generate->add_option("--width", gen_width, "mask width (overrides --size)");
    generate->add_option("--corner", gen_corner, "regular mask corner: tl, tr, bl, br")
        ->capture_default_str();
    generate->add_option("--out", gen_out, "output .qsm path")->required();

    // detect
    auto* detect_cmd = app.add_subcommand("detect", "count unfavorable structures");
    std::string det_mask;
    std::string det_json;
    detect_cmd->add_option("mask", det_mask, "input .qsm path")->required();
    detect_cmd->add_option("--json", det_json, "also write instances as JSON lines");

    // optimize
    auto* optimize_cmd = app.add_subcommand("optimize", "iterative structure removal");
    std::string opt_in;
    std::string opt_out;
    std::string opt_kinds = "all";
    std::string opt_mode = "until-structure-free";
    double opt_frac_low = 0.05;
    double opt_frac_high = 0.10;
    std::uint64_t opt_steps = 25;
    std::uint64_t opt_max_steps = 1'000'000;
    std::string opt_trace;
    optimize_cmd->add_option("--in", opt_in, "input .qsm path")->required();
    optimize_cmd->add_option("--out", opt_out, "output .qsm path")->required();
    optimize_cmd->add_option("--kinds", opt_kinds, "comma list of kinds or 'all'")
        ->capture_default_str();
    optimize_cmd->add_option("--mode", opt_mode, "until-structure-free or fractional")
        ->capture_default_str();
    optimize_cmd->add_option("--fraction-low", opt_frac_low, "fractional mode lower bound")
        ->capture_default_str();
    optimize_cmd->add_option("--fraction-high", opt_frac_high, "fractional mode upper bound")
        ->capture_default_str();
    optimize_cmd->add_option("--steps", opt_steps, "fractional mode step count")
        ->capture_default_str();
    optimize_cmd->add_option("--max-steps", opt_max_steps, "removal step cap")
        ->capture_default_str();
    optimize_cmd->add_option("--trace", opt_trace, "write per-step counts CSV");

    // subsample
    auto* subsample_cmd = app.add_subcommand("subsample", "simulate quarter-sampled acquisition");
    std::string sub_mask;
    std::string sub_input;
    std::string sub_out_image;
    std::string sub_out_mask;
    subsample_cmd->add_option("--mask", sub_mask, "mask .qsm path")->required();
    subsample_cmd->add_option("--input", sub_input, "input image (PGM/PPM)")->required();
    subsample_cmd->add_option("--output", sub_out_image, "output PGM (masked pixels = 0)")
        ->required();
    subsample_cmd->add_option("--out-mask", sub_out_mask, "write the image-sized tiled mask");

    // reconstruct
    auto* reconstruct_cmd = app.add_subcommand("reconstruct", "fill unknown pixels");
    std::string rec_alg = "fsr";
    std::string rec_mask;
    std::string rec_input;
    std::string rec_output;
    FsrFlags rec_fsr;
    reconstruct_cmd->add_option("--algorithm", rec_alg, "nearest, linear or fsr")
        ->capture_default_str();
    reconstruct_cmd->add_option("--mask", rec_mask, "mask .qsm path")->required();
    reconstruct_cmd->add_option("--input", rec_input, "subsampled image (PGM)")->required();
    reconstruct_cmd->add_option("--output", rec_output, "output PGM")->required();
    rec_fsr.attach(reconstruct_cmd);

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "PSNR of one mask over a corpus");
    std::string eval_corpus;
    std::string eval_mask;
    std::string eval_alg = "fsr";
    std::string eval_out;
    FsrFlags eval_fsr;
    evaluate_cmd->add_option("--corpus", eval_corpus, "directory of PGM/PPM images")
        ->required();
    evaluate_cmd->add_option("--mask", eval_mask, "mask as 'label=path' or path")->required();
    evaluate_cmd->add_option("--algorithm", eval_alg, "nearest, linear or fsr")
        ->capture_default_str();
    evaluate_cmd->add_option("--out", eval_out, "per-image CSV output path");
    eval_fsr.attach(evaluate_cmd);

    // experiment
    auto* experiment_cmd = app.add_subcommand("experiment", "mask comparison / stepwise runs");
    std::string exp_mode = "table";
    std::string exp_corpus;
    std::vector<std::string> exp_masks;
    std::vector<std::string> exp_algorithms = {"fsr"};
    std::string exp_baseline = "random";
    std::string exp_out;
    std::string exp_out_rows;
    std::string exp_initial;
    std::vector<std::string> exp_variants = {"all"};
    std::uint64_t exp_steps = 25;
    double exp_frac_low = 0.05;
    double exp_frac_high = 0.10;
    FsrFlags exp_fsr;
    experiment_cmd->add_option("--mode", exp_mode, "table or stepwise")->capture_default_str();
    experiment_cmd->add_option("--corpus", exp_corpus, "directory of PGM/PPM images")
        ->required();
    experiment_cmd->add_option("--masks", exp_masks, "masks as 'label=path' (table mode)");
    experiment_cmd->add_option("--algorithms", exp_algorithms, "algorithms (table mode)")
        ->capture_default_str();
    experiment_cmd->add_option("--baseline", exp_baseline, "gain baseline mask label")
        ->capture_default_str();
    experiment_cmd->add_option("--out", exp_out, "output CSV path")->required();
    experiment_cmd->add_option("--out-rows", exp_out_rows, "per-image rows CSV (table mode)");
    experiment_cmd->add_option("--initial", exp_initial, "initial mask .qsm (stepwise mode)");
    experiment_cmd->add_option("--variants", exp_variants,
                               "enabled-kind sets per curve, e.g. all 8void 2spx (stepwise)");
    experiment_cmd->add_option("--steps", exp_steps, "fractional steps (stepwise mode)")
        ->capture_default_str();
    experiment_cmd->add_option("--fraction-low", exp_frac_low, "per-step fraction lower bound")
        ->capture_default_str();
    experiment_cmd->add_option("--fraction-high", exp_frac_high,
                               "per-step fraction upper bound")
        ->capture_default_str();
    exp_fsr.attach(experiment_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : kExitUsage;
    }

    if (show_version) {
        const qs::FsrParams defaults;
        std::cout << "qsmask " << kVersion << "\n"
                  << "default FSR parameters: block_size=" << defaults.block_size
                  << " border=" << defaults.border
                  << " transform_size=" << defaults.transform_size
                  << " iterations=" << defaults.iterations << " rho=" << defaults.rho
                  << " gamma=" << defaults.gamma << " delta=" << defaults.delta << "\n";
        return 0;
    }

    try {
        if (generate->parsed()) {
            const int h = gen_height > 0 ? gen_height : gen_size;
            const int w = gen_width > 0 ? gen_width : gen_size;
            if (gen_type == "regular") {
                qs::save_mask(qs::make_regular(h, w, parse_corner(gen_corner)), gen_out);
            } else if (gen_type == "random") {
                qs::save_mask(qs::make_random(h, w, seed), gen_out);
            } else {
                throw qs::ValidationError("--type must be regular or random");
            }
        } else if (detect_cmd->parsed()) {
            const qs::QuarterMask mask = qs::load_mask(det_mask);
            const std::vector<qs::StructureInstance> instances = qs::detect_all(mask);
            qs::KindCounts counts{};
            for (const qs::StructureInstance& inst : instances) {
                ++counts[static_cast<int>(inst.kind)];
            }
            for (qs::StructureKind kind : qs::all_structure_kinds) {
                std::cout << qs::to_string(kind) << ' ' << counts[static_cast<int>(kind)]
                          << '\n';
            }
            std::cout << "total " << instances.size() << '\n';
            if (!det_json.empty()) {
                std::ostringstream lines;
                for (const qs::StructureInstance& inst : instances) {
                    nlohmann::json j;
                    j["kind"] = qs::to_string(inst.kind);
                    auto& pixels = j["pixels"] = nlohmann::json::array();
                    for (const qs::Coord& p : inst.pixels) {
                        pixels.push_back({p.row, p.col});
                    }
                    lines << j.dump() << '\n';
                }
                write_text_file(det_json, lines.str());
            }
        } else if (optimize_cmd->parsed()) {
            const qs::QuarterMask mask = qs::load_mask(opt_in);
            qs::OptimizerConfig config;
            config.seed = seed;
            config.enabled_kinds = parse_kinds(opt_kinds);
            config.fraction_low = opt_frac_low;
            config.fraction_high = opt_frac_high;
            config.max_steps = opt_max_steps;
            config.record_trace = !opt_trace.empty();
            if (opt_mode == "until-structure-free") {
                config.mode = qs::OptimizeMode::UntilStructureFree;
                qs::OptimizeResult result = qs::optimize_until_structure_free(mask, config);
                qs::save_mask(result.mask, opt_out);
                if (!opt_trace.empty()) {
                    write_text_file(opt_trace, qs::trace_to_csv(result.trace));
                }
                if (verbose) {
                    std::cerr << "steps used: " << result.steps_used << '\n';
                }
                if (!result.structure_free) {
                    std::cerr << "cap reached: wrote best mask seen, "
                              << qs::total_count(qs::count_by_kind(result.mask))
                              << " structures remain\n";
                    return kExitCapReached;
                }
            } else if (opt_mode == "fractional") {
                config.mode = qs::OptimizeMode::Fractional;
                const std::vector<qs::FractionalStep> steps =
                    qs::optimize_fractional(mask, config, opt_steps);
                qs::save_mask(steps.back().mask, opt_out);
                if (!opt_trace.empty()) {
                    qs::OptimizerTrace trace;
                    for (const qs::FractionalStep& step : steps) {
                        trace.push_back(step.trace);
                    }
                    write_text_file(opt_trace, qs::trace_to_csv(trace));
                }
            } else {
                throw qs::ValidationError("--mode must be until-structure-free or fractional");
            }
        } else if (subsample_cmd->parsed()) {
            const qs::GrayImage image = qs::crop_to_even(qs::read_image(sub_input));
            const qs::SampledImage sampled = qs::subsample(image, qs::load_mask(sub_mask));
            qs::write_pgm(sampled.values, sub_out_image);
            if (!sub_out_mask.empty()) {
                qs::save_mask(sampled.mask, sub_out_mask);
            }
        } else if (reconstruct_cmd->parsed()) {
            const qs::GrayImage image = qs::crop_to_even(qs::read_image(rec_input));
            const qs::QuarterMask mask =
                qs::tile_to(qs::load_mask(rec_mask), image.height(), image.width());
            // The mask is authoritative: values at masked positions are ignored.
            qs::SampledImage sampled{mask, image};
            const qs::GrayImage restored = qs::reconstruct(
                sampled, qs::algorithm_from_string(rec_alg), rec_fsr.params);
            qs::write_pgm(restored, rec_output);
        } else if (evaluate_cmd->parsed()) {
            const std::vector<qs::CorpusImage> corpus = qs::load_corpus(eval_corpus);
            const qs::LabeledMask mask = parse_labeled_mask(eval_mask);
            const std::vector<qs::ReportRow> rows =
                qs::evaluate_mask(mask, corpus, qs::algorithm_from_string(eval_alg),
                                  eval_fsr.params, threads);
            const std::string csv = qs::rows_to_csv(rows);
            if (eval_out.empty()) {
                std::cout << csv;
            } else {
                write_text_file(eval_out, csv);
            }
            std::cout << "mean_psnr_db " << qs::mean_psnr(rows) << '\n';
        } else if (experiment_cmd->parsed()) {
            const std::vector<qs::CorpusImage> corpus = qs::load_corpus(exp_corpus);
            if (exp_mode == "table") {
                std::vector<qs::LabeledMask> masks;
                for (const std::string& arg : exp_masks) {
                    masks.push_back(parse_labeled_mask(arg));
                }
                if (masks.empty()) {
                    throw qs::ValidationError("table mode needs --masks");
                }
                std::vector<qs::Algorithm> algorithms;
                for (const std::string& name : exp_algorithms) {
                    algorithms.push_back(qs::algorithm_from_string(name));
                }
                const qs::ExperimentReport report = qs::experiment_table(
                    masks, corpus, algorithms, exp_baseline, exp_fsr.params, threads);
                write_text_file(exp_out, qs::aggregates_to_csv(report.aggregates));
                if (!exp_out_rows.empty()) {
                    write_text_file(exp_out_rows, qs::rows_to_csv(report.rows));
                }
            } else if (exp_mode == "stepwise") {
                if (exp_initial.empty()) {
                    throw qs::ValidationError("stepwise mode needs --initial");
                }
                const qs::QuarterMask initial = qs::load_mask(exp_initial);
                if (exp_algorithms.size() != 1) {
                    throw qs::ValidationError("stepwise mode uses exactly one algorithm");
                }
                std::vector<qs::OptimizerConfig> variants;
                for (const std::string& spec : exp_variants) {
                    qs::OptimizerConfig config;
                    config.seed = seed;
                    config.mode = qs::OptimizeMode::Fractional;
                    config.enabled_kinds = parse_kinds(spec);
                    config.fraction_low = exp_frac_low;
                    config.fraction_high = exp_frac_high;
                    variants.push_back(config);
                }
                const std::vector<qs::StepwisePoint> curve = qs::experiment_stepwise(
                    initial, variants, exp_variants, corpus,
                    qs::algorithm_from_string(exp_algorithms.front()), exp_steps,
                    exp_fsr.params, threads);
                write_text_file(exp_out, qs::curve_to_csv(curve));
            } else {
                throw qs::ValidationError("--mode must be table or stepwise");
            }
        }
    } catch (const qs::IoError& err) {
        std::cerr << "qsmask: " << err.what() << '\n';
        return kExitIo;
    } catch (const qs::ParseError& err) {
        std::cerr << "qsmask: " << err.what() << '\n';
        return kExitValidation;
    } catch (const qs::ValidationError& err) {
        std::cerr << "qsmask: " << err.what() << '\n';
        return kExitValidation;
    } catch (const qs::StaleInstanceError& err) {
        std::cerr << "qsmask: " << err.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& err) {
        std::cerr << "qsmask: " << err.what() << '\n';
        return kExitValidation;
    }
    return 0;
}

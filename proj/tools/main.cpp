#include <CLI11.hpp>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <thread>

#include "glucospec/csv_io.hpp"
#include "glucospec/errors.hpp"
#include "glucospec/fsutil.hpp"
#include "glucospec/log.hpp"
#include "glucospec/model_io.hpp"
#include "glucospec/pca.hpp"
#include "glucospec/reports.hpp"
#include "glucospec/run_config.hpp"
#include "glucospec/standardize.hpp"
#include "glucospec/version.hpp"

namespace gs = glucospec;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_override;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = -1;
    bool dump_stages = false;
};

struct LoadedConfig {
    gs::RunConfig config;
    std::string hash;
};

LoadedConfig load_config(const CommonArgs& args) {
    const std::string bytes = gs::read_file(args.config_path);
    char hash[24];
    std::snprintf(hash, sizeof(hash), "fnv1a64:%016" PRIx64, gs::fnv1a64(bytes));
    gs::RunConfig cfg = gs::load_run_config(args.config_path);
    if (!args.out_override.empty())
        cfg.output_dir = args.out_override;
    if (args.seed_set) {
        if (cfg.synthesis)
            cfg.synthesis->seed = args.seed;
        else
            gs::logging::warn("--seed ignored: dataset comes from CSV files");
    }
    if (args.threads >= 0)
        cfg.threads = args.threads;
    return {std::move(cfg), hash};
}

int effective_threads(const gs::RunConfig& cfg) {
    if (cfg.threads > 0)
        return cfg.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string feature_matrix_csv(const gs::WavenumberGrid& grid, const gs::FeatureMatrix& fm) {
    std::ostringstream out;
    out << "wavenumber";
    for (const auto& id : fm.sample_ids)
        out << ',' << id;
    out << '\n';
    for (long r = 0; r < grid.count; ++r) {
        out << gs::format_csv_value(grid.at(r));
        for (long i = 0; i < fm.n_samples(); ++i)
            out << ',' << gs::format_csv_value(fm.rows(i, r));
        out << '\n';
    }
    return out.str();
}

void dump_stages(const gs::SpectralDataset& raw, const gs::RunConfig& cfg,
                 gs::Manifest& manifest) {
    const std::string dir = (fs::path(cfg.output_dir) / "stages").string();
    gs::SpectralDataset stage = raw;
    manifest.emit(dir, "00_transmittance.csv", gs::spectra_to_csv(stage));

    for (long i = 0; i < stage.n_samples(); ++i)
        stage.spectra[i] = gs::to_absorbance(stage.spectra[i]);
    manifest.emit(dir, "01_absorbance.csv", gs::spectra_to_csv(stage));

    int idx = 2;
    if (cfg.preprocess.apply_rubberband) {
        for (auto& s : stage.spectra)
            s = gs::rubberband_correct(s);
        manifest.emit(dir, "02_rubberband.csv", gs::spectra_to_csv(stage));
        ++idx;
    }
    if (cfg.preprocess.apply_minmax) {
        for (auto& s : stage.spectra)
            s = gs::minmax_normalize(s);
        manifest.emit(dir, "0" + std::to_string(idx) + "_minmax.csv",
                      gs::spectra_to_csv(stage));
        ++idx;
    }
    for (auto& s : stage.spectra)
        s = gs::savgol_smooth(s, cfg.preprocess.savgol);
    manifest.emit(dir, "0" + std::to_string(idx) + "_savgol.csv", gs::spectra_to_csv(stage));
    ++idx;

    gs::SpectralDataset deriv = stage;
    for (auto& s : deriv.spectra)
        s = gs::first_derivative(s);
    manifest.emit(dir, "0" + std::to_string(idx) + "_derivative.csv",
                  gs::spectra_to_csv(deriv));
    ++idx;

    if (cfg.feature) {
        const gs::FeatureMatrix fm = gs::apply_feature_method(stage, *cfg.feature);
        manifest.emit(dir, "0" + std::to_string(idx) + "_features.csv",
                      feature_matrix_csv(stage.grid(), fm));
    }
}

int cmd_synth(const CommonArgs& args) {
    const auto [cfg, hash] = load_config(args);
    if (!cfg.synthesis)
        throw gs::ConfigError("synth needs a dataset.synthesis section");
    gs::logging::info("synthesizing " + std::to_string(cfg.synthesis->n_samples) + " samples");
    const gs::SpectralDataset ds = gs::synthesize(*cfg.synthesis);
    gs::Manifest manifest("synth", hash);
    manifest.emit(cfg.output_dir, "spectra.csv", gs::spectra_to_csv(ds));
    manifest.emit(cfg.output_dir, "labels.csv", gs::labels_to_csv(ds));
    manifest.write(cfg.output_dir);
    std::printf("wrote %s/spectra.csv and labels.csv (%ld samples)\n",
                cfg.output_dir.c_str(), ds.n_samples());
    return 0;
}

int cmd_preprocess(const CommonArgs& args) {
    const auto [cfg, hash] = load_config(args);
    const gs::SpectralDataset ds = cfg.load_dataset();
    const gs::SpectralDataset pre = gs::preprocess_chain(ds, cfg.preprocess);
    gs::Manifest manifest("preprocess", hash);
    manifest.emit(cfg.output_dir, "preprocessed_spectra.csv", gs::spectra_to_csv(pre));
    manifest.emit(cfg.output_dir, "labels.csv", gs::labels_to_csv(pre));
    if (args.dump_stages)
        dump_stages(ds, cfg, manifest);
    manifest.write(cfg.output_dir);
    std::printf("preprocessed %ld samples into %s\n", pre.n_samples(),
                cfg.output_dir.c_str());
    return 0;
}

int cmd_evaluate(const CommonArgs& args) {
    const auto [cfg, hash] = load_config(args);
    const gs::PipelineConfig pipeline = cfg.pipeline();
    const gs::SpectralDataset ds = cfg.load_dataset();
    gs::logging::info("running LOOCV over " + std::to_string(ds.n_samples()) + " samples");
    const auto predictions = gs::loocv_run(ds, pipeline);
    const gs::EvaluationReport report = gs::build_evaluation_report(predictions);

    gs::Manifest manifest("evaluate", hash);
    manifest.emit(cfg.output_dir, "metrics.json", gs::evaluation_to_json(report).dump(2) + "\n");
    manifest.emit(cfg.output_dir, "predictions.csv", gs::predictions_csv(report));
    manifest.emit(cfg.output_dir, "ae_distribution.csv", gs::ae_distribution_csv(report));
    manifest.emit(cfg.output_dir, "scatter.csv", gs::scatter_csv(report));
    manifest.emit(cfg.output_dir, "clarke_grid.svg",
                  gs::error_grid_svg(gs::GridKind::Clarke, predictions));
    manifest.emit(cfg.output_dir, "parkes_type1_grid.svg",
                  gs::error_grid_svg(gs::GridKind::ParkesType1, predictions));
    manifest.emit(cfg.output_dir, "parkes_type2_grid.svg",
                  gs::error_grid_svg(gs::GridKind::ParkesType2, predictions));

    // Final model refitted on every sample, for the record.
    {
        const gs::SpectralDataset pre = gs::preprocess_chain(ds, pipeline.preprocess);
        const gs::FeatureMatrix fm = gs::apply_feature_method(pre, pipeline.feature);
        const gs::Standardizer st = gs::standardizer_fit(fm.rows);
        const Eigen::MatrixXd z = gs::standardizer_apply(st, fm.rows);
        const gs::PcaModel pca = gs::pca_fit(z, pipeline.pca_k);
        const Eigen::MatrixXd scores = gs::pca_transform(pca, z);
        gs::TrainedModel final_model;
        if (const auto* ridge = std::get_if<gs::RidgeSpec>(&pipeline.model))
            final_model = gs::ridge_fit(scores, fm.labels, ridge->alpha);
        else {
            const auto& svr = std::get<gs::SvrSpec>(pipeline.model);
            final_model = gs::svr_fit(scores, fm.labels, svr.kernel, svr.C, svr.epsilon,
                                      pipeline.svr_options);
        }
        manifest.emit(cfg.output_dir, "final_model.json",
                      gs::model_to_json(final_model).dump(2) + "\n");
    }

    if (args.dump_stages)
        dump_stages(ds, cfg, manifest);
    manifest.write(cfg.output_dir);
    std::printf("evaluate: mse=%.6g mae=%.6g r2=%s -> %s\n", report.metrics.mse,
                report.metrics.mae,
                report.metrics.r2 ? std::to_string(*report.metrics.r2).c_str() : "undefined",
                cfg.output_dir.c_str());
    return 0;
}

int cmd_tune(const CommonArgs& args) {
    const auto [cfg, hash] = load_config(args);
    if (!cfg.search)
        throw gs::ConfigError("tune needs a 'search' section");
    const gs::SpectralDataset ds = cfg.load_dataset();
    const gs::SearchSpace space = cfg.search->to_space();
    gs::logging::info("grid search over " + std::to_string(space.size()) + " trials");
    const gs::SearchTrace trace =
        gs::grid_search(ds, space, cfg.preprocess, effective_threads(cfg));

    long n_ok = 0, n_err = 0, n_skip = 0;
    for (const auto& t : trace.trials) {
        if (t.status == gs::TrialResult::Status::Ok)
            ++n_ok;
        else if (t.status == gs::TrialResult::Status::Error)
            ++n_err;
        else
            ++n_skip;
    }
    if (n_err > 0)
        gs::logging::warn(std::to_string(n_err) + " of " + std::to_string(trace.trials.size()) +
                          " trials failed; see trace.csv");

    gs::Manifest manifest("tune", hash);
    manifest.emit(cfg.output_dir, "trace.csv", gs::trace_csv(trace));

    if (trace.best_index >= 0) {
        const auto& best = trace.best();
        gs::RunConfig best_cfg;
        best_cfg.spectra_csv = cfg.spectra_csv;
        best_cfg.labels_csv = cfg.labels_csv;
        best_cfg.synthesis = cfg.synthesis;
        best_cfg.preprocess = cfg.preprocess;
        best_cfg.feature = best.feature;
        best_cfg.pca_k = best.pca_k;
        best_cfg.model = best.model;
        best_cfg.output_dir = (fs::path(cfg.output_dir) / "best_eval").string();
        manifest.emit(cfg.output_dir, "best_config.json",
                      gs::run_config_to_json(best_cfg).dump(2) + "\n");

        json summary{{"trials", trace.trials.size()},
                     {"ok", n_ok},
                     {"error", n_err},
                     {"skipped", n_skip},
                     {"best_index", trace.best_index},
                     {"best", {{"feature", gs::feature_method_to_json(best.feature)},
                               {"pca_components", best.pca_k},
                               {"model", gs::model_spec_to_json(best.model)},
                               {"metrics", gs::metrics_to_json(best.metrics)}}}};
        manifest.emit(cfg.output_dir, "tune_summary.json", summary.dump(2) + "\n");
        manifest.write(cfg.output_dir);
        std::printf("tune: best mse=%.6g (%s, pca_k=%ld) -> %s\n", best.metrics.mse,
                    best.feature.name().c_str(), best.pca_k, cfg.output_dir.c_str());
        return 0;
    }
    manifest.write(cfg.output_dir);
    throw gs::PipelineError("every trial failed; see " + cfg.output_dir + "/trace.csv");
}

int cmd_compare(const std::vector<std::string>& config_paths, const std::string& out_dir) {
    struct Run {
        std::string label;
        json metrics;
        json grids;
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i < config_paths.size(); ++i) {
        const gs::RunConfig cfg = gs::load_run_config(config_paths[i]);
        const fs::path metrics_path = fs::path(cfg.output_dir) / "metrics.json";
        if (!fs::exists(metrics_path))
            throw gs::IoError("run " + config_paths[i] + " has no outputs at " +
                              metrics_path.string() + "; evaluate it first");
        json doc;
        try {
            doc = json::parse(gs::read_file(metrics_path.string()));
        } catch (const json::exception& e) {
            throw gs::IoError(metrics_path.string() + ": " + e.what());
        }
        std::string label = "r" + std::to_string(i);
        if (cfg.feature)
            label += ":" + cfg.feature->name();
        if (cfg.model)
            label += "/" + gs::model_family(*cfg.model);
        runs.push_back({label, doc.at("metrics"), doc.at("error_grids")});
    }

    auto metric_of = [](const Run& r, const char* key) -> std::string {
        const auto& v = r.metrics.at(key);
        return v.is_null() ? "undefined" : v.dump();
    };
    auto outside_a = [](const Run& r, const char* grid) {
        return r.grids.at(grid).at("outside_zone_a").dump();
    };

    std::ostringstream mcsv, zcsv, txt;
    mcsv << "metric";
    zcsv << "grid";
    for (const auto& r : runs) {
        mcsv << ',' << r.label;
        zcsv << ',' << r.label;
    }
    mcsv << '\n';
    zcsv << '\n';
    for (const char* key : {"mse", "rmse", "mae", "r2"}) {
        mcsv << key;
        for (const auto& r : runs)
            mcsv << ',' << metric_of(r, key);
        mcsv << '\n';
    }
    for (const char* grid : {"parkes_type1", "parkes_type2", "clarke"}) {
        zcsv << grid;
        for (const auto& r : runs)
            zcsv << ',' << outside_a(r, grid);
        zcsv << '\n';
    }

    txt << "Metrics by run\n";
    txt << "  " << std::left;
    for (const auto& key : {"metric", "mse", "rmse", "mae", "r2"}) {
        txt.width(14);
        txt << key;
    }
    txt << '\n';
    for (const auto& r : runs) {
        txt << "  ";
        txt.width(14);
        txt << r.label;
        for (const char* key : {"mse", "rmse", "mae", "r2"}) {
            txt.width(14);
            txt << metric_of(r, key).substr(0, 12);
        }
        txt << '\n';
    }
    txt << "\nPoints outside zone A\n  ";
    txt.width(14);
    txt << "run";
    for (const char* grid : {"PEG-1", "PEG-2", "CEG"}) {
        txt.width(8);
        txt << grid;
    }
    txt << '\n';
    for (const auto& r : runs) {
        txt << "  ";
        txt.width(14);
        txt << r.label;
        for (const char* grid : {"parkes_type1", "parkes_type2", "clarke"}) {
            txt.width(8);
            txt << outside_a(r, grid);
        }
        txt << '\n';
    }

    gs::Manifest manifest("compare", "fnv1a64:0000000000000000");
    manifest.emit(out_dir, "comparison_metrics.csv", mcsv.str());
    manifest.emit(out_dir, "comparison_zones.csv", zcsv.str());
    manifest.emit(out_dir, "comparison.txt", txt.str());
    manifest.write(out_dir);
    std::fputs(txt.str().c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"glucospec: blood glucose estimation from MIR transmittance spectra"};
    app.set_version_flag("--version", gs::kVersion);
    app.require_subcommand(1);

    CommonArgs args;
    std::vector<std::string> compare_paths;
    std::string compare_out = "comparison";

    auto add_common = [&](CLI::App* sub, bool with_stages) {
        sub->add_option("--config", args.config_path, "run config JSON")->required();
        sub->add_option("--out", args.out_override, "override the config output_dir");
        sub->add_option("--seed", args.seed, "override the synthesis seed")
            ->each([&](const std::string&) { args.seed_set = true; });
        sub->add_option("--threads", args.threads, "worker threads (0 = all cores)");
        if (with_stages)
            sub->add_flag("--dump-stages", args.dump_stages,
                          "write each preprocessing/feature stage per sample");
    };

    CLI::App* synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
    add_common(synth, false);
    CLI::App* preprocess = app.add_subcommand("preprocess", "run the preprocessing chain");
    add_common(preprocess, true);
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "LOOCV evaluation with metrics and error grids");
    add_common(evaluate, true);
    CLI::App* tune = app.add_subcommand("tune", "grid search over the hyperparameter space");
    add_common(tune, false);
    CLI::App* compare = app.add_subcommand("compare", "tabulate evaluated runs side by side");
    compare->add_option("configs", compare_paths, "configs of evaluated runs")
        ->required()
        ->expected(2, -1);
    compare->add_option("--out", compare_out, "output directory");

    try {
        app.parse(argc, argv);
        if (synth->parsed())
            return cmd_synth(args);
        if (preprocess->parsed())
            return cmd_preprocess(args);
        if (evaluate->parsed())
            return cmd_evaluate(args);
        if (tune->parsed())
            return cmd_tune(args);
        if (compare->parsed())
            return cmd_compare(compare_paths, compare_out);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const gs::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const gs::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const gs::PipelineError& e) {
        std::fprintf(stderr, "pipeline error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

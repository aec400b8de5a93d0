#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "glucospec/loocv.hpp"
#include "glucospec/synth.hpp"
#include "glucospec/tuning.hpp"

namespace glucospec {

/// Grid overrides for a tune run; anything unset falls back to the
/// default search space densities.
struct SearchConfig {
    FeatureFamily feature_family = FeatureFamily::Base;
    ModelFamily model_family = ModelFamily::Ridge;
    std::optional<std::vector<double>> feature_params;
    std::optional<std::vector<long>> pca_ks;
    std::optional<std::vector<double>> ridge_alphas;
    std::optional<std::vector<double>> svr_cs;
    std::optional<std::vector<std::string>> svr_kernels;
    std::optional<std::vector<double>> svr_epsilons;
    double derivative_scale = 100.0;

    SearchSpace to_space() const;
};

/// One versioned JSON document drives every subcommand; common overrides
/// (seed, output dir, threads) also exist as flags.
struct RunConfig {
    // exactly one of (spectra_csv, labels_csv) or synthesis is present
    std::optional<std::string> spectra_csv;
    std::optional<std::string> labels_csv;
    std::optional<SynthesisConfig> synthesis;

    PreprocessConfig preprocess;
    std::optional<FeatureMethod> feature;
    std::optional<long> pca_k;
    std::optional<ModelSpec> model;
    std::optional<SearchConfig> search;

    std::string output_dir = "out";
    int threads = 0;  // 0 = hardware concurrency

    /// Loads the dataset from files or the synthesizer.
    SpectralDataset load_dataset() const;

    /// Throws ConfigError unless the fields needed by `evaluate` are present.
    PipelineConfig pipeline() const;
};

RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);
nlohmann::json run_config_to_json(const RunConfig& config);

nlohmann::json feature_method_to_json(const FeatureMethod& m);
FeatureMethod feature_method_from_json(const nlohmann::json& j);
nlohmann::json model_spec_to_json(const ModelSpec& m);
ModelSpec model_spec_from_json(const nlohmann::json& j);

}  // namespace glucospec

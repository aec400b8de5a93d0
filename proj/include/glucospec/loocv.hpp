#pragma once

#include <variant>
#include <vector>

#include "glucospec/features.hpp"
#include "glucospec/metrics.hpp"
#include "glucospec/preprocess.hpp"
#include "glucospec/ridge.hpp"
#include "glucospec/svr.hpp"

namespace glucospec {

struct RidgeSpec {
    double alpha = 50.0;
};

struct SvrSpec {
    Kernel kernel;
    double C = 1.0;
    double epsilon = 0.1;
};

using ModelSpec = std::variant<RidgeSpec, SvrSpec>;

std::string model_family(const ModelSpec& spec);

/// One fully specified pipeline point: preprocessing, feature transform
/// (tau/alpha fixed up front, applied per sample), PCA width and regressor.
struct PipelineConfig {
    PreprocessConfig preprocess;
    FeatureMethod feature;
    long pca_k = 8;
    ModelSpec model = RidgeSpec{};
    SvrFitOptions svr_options;
};

/// Leave-one-out CV on an already-built feature matrix: per fold, the
/// standardizer and PCA are fitted on the n-1 training rows only, then the
/// regressor predicts the held-out row.
std::vector<CvPrediction> loocv_over_features(const FeatureMatrix& features, long pca_k,
                                              const ModelSpec& model,
                                              const SvrFitOptions& svr_options = {});

/// Full pipeline LOOCV from a raw transmittance dataset (n >= 3).
std::vector<CvPrediction> loocv_run(const SpectralDataset& dataset,
                                    const PipelineConfig& config);

}  // namespace glucospec

#pragma once

#include <string>
#include <vector>

#include "glucospec/loocv.hpp"

namespace glucospec {

enum class FeatureFamily { Base, Derivative, Tbd, Adpd };
enum class ModelFamily { Ridge, Svr };

FeatureFamily feature_family_from_string(const std::string& name);
ModelFamily model_family_from_string(const std::string& name);
const char* to_string(FeatureFamily f);
const char* to_string(ModelFamily m);

/// Cartesian hyperparameter grid for one feature family x model family.
struct SearchSpace {
    FeatureFamily feature_family = FeatureFamily::Base;
    std::vector<double> feature_params;  // taus (TBD) / alphas (ADPD); ignored otherwise
    double derivative_scale = 100.0;
    std::vector<long> pca_ks;
    ModelFamily model_family = ModelFamily::Ridge;
    std::vector<double> ridge_alphas;
    std::vector<double> svr_cs;
    std::vector<Kernel> svr_kernels;
    std::vector<double> svr_epsilons;
    SvrFitOptions svr_options;

    std::vector<FeatureMethod> feature_methods() const;
    long regressor_combinations() const;
    long size() const;  // trials, before any pca_k clamping
    void validate() const;
};

/// The declared tuning grids: tau 15 log-spaced in [0.02, 0.3]; ADPD alpha
/// 15 linear in [0, 70]; ridge alpha 10 linear in [10, 100]; SVR C 10 linear
/// in [0.1, 2] (the table's lower bound 0 is invalid for C) with
/// linear/RBF/poly kernels and epsilon {0.1 ... 0.5}; PCA k 1..20.
SearchSpace default_search_space(FeatureFamily feature, ModelFamily model);

struct TrialResult {
    enum class Status { Ok, Skipped, Error };

    FeatureMethod feature;
    long pca_k = 1;
    ModelSpec model = RidgeSpec{};
    Status status = Status::Ok;
    std::string message;
    MetricReport metrics;  // meaningful only when status == Ok
};

struct SearchTrace {
    std::vector<TrialResult> trials;  // lexicographic grid order, every point
    long best_index = -1;             // -1 if no trial succeeded

    const TrialResult& best() const;
};

/// Evaluates every grid point with a full LOOCV run and picks the minimal
/// MSE. pca_k values above n-2 are recorded as skipped; failed fits are
/// recorded with an error marker and excluded from the argmin. Equal-MSE
/// ties prefer the smallest pca_k, then the smallest ridge alpha / SVR C,
/// then epsilon, kernel order and feature parameter, so the winner does not
/// depend on evaluation order. Trials run on `threads` workers; the trace
/// is identical regardless.
SearchTrace grid_search(const SpectralDataset& dataset, const SearchSpace& space,
                        const PreprocessConfig& preprocess = {}, int threads = 1);

}  // namespace glucospec

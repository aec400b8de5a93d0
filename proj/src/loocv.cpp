#include "glucospec/loocv.hpp"

#include "glucospec/errors.hpp"
#include "glucospec/pca.hpp"
#include "glucospec/standardize.hpp"

namespace glucospec {

std::string model_family(const ModelSpec& spec) {
    return std::holds_alternative<RidgeSpec>(spec) ? "ridge" : "svr";
}

namespace {

Eigen::MatrixXd drop_row(const Eigen::MatrixXd& m, long skip) {
    Eigen::MatrixXd out(m.rows() - 1, m.cols());
    out.topRows(skip) = m.topRows(skip);
    out.bottomRows(m.rows() - 1 - skip) = m.bottomRows(m.rows() - 1 - skip);
    return out;
}

Eigen::VectorXd drop_entry(const Eigen::VectorXd& v, long skip) {
    Eigen::VectorXd out(v.size() - 1);
    out.head(skip) = v.head(skip);
    out.tail(v.size() - 1 - skip) = v.tail(v.size() - 1 - skip);
    return out;
}

}  // namespace

std::vector<CvPrediction> loocv_over_features(const FeatureMatrix& features, long pca_k,
                                              const ModelSpec& model,
                                              const SvrFitOptions& svr_options) {
    const long n = features.n_samples();
    if (n < 3)
        throw PipelineError("LOOCV needs at least 3 samples, got " + std::to_string(n));

    std::vector<CvPrediction> predictions;
    predictions.reserve(n);
    for (long i = 0; i < n; ++i) {
        try {
            const Eigen::MatrixXd train = drop_row(features.rows, i);
            const Eigen::VectorXd y = drop_entry(features.labels, i);

            const Standardizer st = standardizer_fit(train);
            const Eigen::MatrixXd z_train = standardizer_apply(st, train);
            const Eigen::MatrixXd z_test =
                standardizer_apply(st, features.rows.row(i));

            const PcaModel pca = pca_fit(z_train, pca_k);
            const Eigen::MatrixXd s_train = pca_transform(pca, z_train);
            const Eigen::MatrixXd s_test = pca_transform(pca, z_test);

            double pred = 0.0;
            if (const auto* ridge = std::get_if<RidgeSpec>(&model)) {
                pred = ridge_predict(ridge_fit(s_train, y, ridge->alpha), s_test)[0];
            } else {
                const auto& svr = std::get<SvrSpec>(model);
                pred = svr_predict(
                    svr_fit(s_train, y, svr.kernel, svr.C, svr.epsilon, svr_options),
                    s_test)[0];
            }
            predictions.push_back(
                {features.sample_ids[i], features.labels[i], pred, i});
        } catch (const std::exception& e) {
            throw PipelineError("LOOCV fold " + std::to_string(i) + " (sample " +
                                features.sample_ids[i] + "): " + e.what());
        }
    }
    return predictions;
}

std::vector<CvPrediction> loocv_run(const SpectralDataset& dataset,
                                    const PipelineConfig& config) {
    if (dataset.n_samples() < 3)
        throw PipelineError("LOOCV needs at least 3 samples, got " +
                            std::to_string(dataset.n_samples()));
    const SpectralDataset pre = preprocess_chain(dataset, config.preprocess);
    const FeatureMatrix features = apply_feature_method(pre, config.feature);
    return loocv_over_features(features, config.pca_k, config.model, config.svr_options);
}

}  // namespace glucospec

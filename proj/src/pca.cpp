#include "glucospec/pca.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "glucospec/errors.hpp"

namespace glucospec {

PcaModel PcaModel::truncated(long k) const {
    if (k < 1 || k > n_components())
        throw PipelineError("cannot truncate a " + std::to_string(n_components()) +
                            "-component PCA model to k = " + std::to_string(k));
    PcaModel out;
    out.components = components.topRows(k);
    out.center = center;
    out.explained_variance = explained_variance.head(k);
    return out;
}

PcaModel pca_fit_full(const Eigen::MatrixXd& train_rows) {
    const long n = train_rows.rows();
    const long p = train_rows.cols();
    if (n < 2)
        throw PipelineError("PCA needs at least 2 training rows");

    PcaModel model;
    model.center = train_rows.colwise().mean();
    Eigen::MatrixXd centered = train_rows.rowwise() - model.center.transpose();

    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const long rank = std::min(n - 1, p);
    model.components = svd.matrixV().leftCols(rank).transpose();
    model.explained_variance =
        svd.singularValues().head(rank).array().square() / static_cast<double>(n - 1);

    // Sign convention: largest-magnitude entry of each loading is positive
    // (first index wins ties), keeping fixtures stable.
    for (long c = 0; c < rank; ++c) {
        long best = 0;
        double mag = -1.0;
        for (long j = 0; j < p; ++j) {
            const double m = std::abs(model.components(c, j));
            if (m > mag) {
                mag = m;
                best = j;
            }
        }
        if (model.components(c, best) < 0.0)
            model.components.row(c) = -model.components.row(c);
    }
    return model;
}

PcaModel pca_fit(const Eigen::MatrixXd& train_rows, long k) {
    const long limit = std::min(train_rows.rows() - 1, train_rows.cols());
    if (k < 1 || k > limit)
        throw PipelineError("PCA component count " + std::to_string(k) +
                            " outside [1, " + std::to_string(limit) + "]");
    return pca_fit_full(train_rows).truncated(k);
}

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& rows) {
    if (rows.cols() != model.center.size())
        throw PipelineError("PCA model has " + std::to_string(model.center.size()) +
                            " features, got " + std::to_string(rows.cols()));
    const Eigen::MatrixXd centered = rows.rowwise() - model.center.transpose();
    // One GEMV per component: score column j depends only on loading j, so
    // truncated models score identically to the leading columns of wider ones.
    Eigen::MatrixXd scores(rows.rows(), model.n_components());
    for (long j = 0; j < model.n_components(); ++j)
        scores.col(j).noalias() = centered * model.components.row(j).transpose();
    return scores;
}

Eigen::MatrixXd pca_inverse_transform(const PcaModel& model, const Eigen::MatrixXd& scores) {
    if (scores.cols() != model.n_components())
        throw PipelineError("score width " + std::to_string(scores.cols()) +
                            " does not match component count " +
                            std::to_string(model.n_components()));
    return (scores * model.components).rowwise() + model.center.transpose();
}

}  // namespace glucospec

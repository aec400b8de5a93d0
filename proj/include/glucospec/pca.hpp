#pragma once

#include <Eigen/Core>

namespace glucospec {

/// Principal components of a (standardized) training matrix, computed by
/// thin SVD of the centered rows. Loadings are orthonormal; each loading's
/// largest-magnitude entry is made positive so results are sign-stable.
struct PcaModel {
    Eigen::MatrixXd components;          // k x p, one loading per row
    Eigen::VectorXd center;              // training column means
    Eigen::VectorXd explained_variance;  // singular_value^2 / (n - 1), non-increasing

    long n_components() const { return components.rows(); }

    /// First k components of this model (k <= n_components).
    PcaModel truncated(long k) const;
};

/// Requires 1 <= k <= min(n_train - 1, n_features). pca_fit(X, k) is exactly
/// the truncation of the full-rank fit, so nested component counts agree.
PcaModel pca_fit(const Eigen::MatrixXd& train_rows, long k);

/// All min(n_train - 1, n_features) components.
PcaModel pca_fit_full(const Eigen::MatrixXd& train_rows);

/// Scores = (rows - center) * components^T.
Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& rows);

/// Centered reconstruction from scores plus the center (used in tests).
Eigen::MatrixXd pca_inverse_transform(const PcaModel& model, const Eigen::MatrixXd& scores);

}  // namespace glucospec

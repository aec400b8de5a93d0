#pragma once

#include <Eigen/Core>

namespace glucospec {

/// Per-feature z-scoring, fitted on training rows only (population sd,
/// denominator n). Columns that are constant on the training fold get
/// sd = 0 and standardize to 0.
struct Standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd sd;
};

Standardizer standardizer_fit(const Eigen::MatrixXd& train_rows);
Eigen::MatrixXd standardizer_apply(const Standardizer& s, const Eigen::MatrixXd& rows);

}  // namespace glucospec

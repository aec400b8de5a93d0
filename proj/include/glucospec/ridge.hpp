#pragma once

#include <Eigen/Core>

namespace glucospec {

/// L2-regularized least squares. X and y are centered before solving so the
/// intercept stays unpenalized; the normal equations go through an LDLT
/// factorization rather than an explicit inverse.
struct RidgeModel {
    Eigen::VectorXd coefficients;
    double intercept = 0.0;
    double alpha = 0.0;
};

RidgeModel ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double alpha);
Eigen::VectorXd ridge_predict(const RidgeModel& model, const Eigen::MatrixXd& rows);

}  // namespace glucospec

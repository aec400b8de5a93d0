#include "glucospec/ridge.hpp"

#include <Eigen/Dense>

#include "glucospec/errors.hpp"

namespace glucospec {

RidgeModel ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double alpha) {
    if (X.rows() != y.size())
        throw PipelineError("ridge fit: " + std::to_string(X.rows()) + " rows vs " +
                            std::to_string(y.size()) + " targets");
    if (X.rows() < 1)
        throw PipelineError("ridge fit needs at least one row");
    if (alpha < 0.0)
        throw PipelineError("ridge alpha must be non-negative");

    const Eigen::RowVectorXd x_mean = X.colwise().mean();
    const double y_mean = y.mean();
    const Eigen::MatrixXd xc = X.rowwise() - x_mean;
    const Eigen::VectorXd yc = y.array() - y_mean;

    Eigen::MatrixXd gramian = xc.transpose() * xc;
    gramian.diagonal().array() += alpha;
    if (alpha == 0.0) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(gramian);
        if (!lu.isInvertible())
            throw PipelineError("ridge with alpha = 0 on a singular system; "
                                "increase alpha or drop collinear features");
    }
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(gramian);
    if (ldlt.info() != Eigen::Success)
        throw PipelineError("ridge normal equations could not be factorized");

    RidgeModel model;
    model.alpha = alpha;
    model.coefficients = ldlt.solve(xc.transpose() * yc);
    model.intercept = y_mean - x_mean.dot(model.coefficients);
    return model;
}

Eigen::VectorXd ridge_predict(const RidgeModel& model, const Eigen::MatrixXd& rows) {
    if (rows.cols() != model.coefficients.size())
        throw PipelineError("ridge model has " + std::to_string(model.coefficients.size()) +
                            " coefficients, got " + std::to_string(rows.cols()) + " features");
    return (rows * model.coefficients).array() + model.intercept;
}

}  // namespace glucospec

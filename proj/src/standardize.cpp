#include "glucospec/standardize.hpp"

#include <cmath>

#include "glucospec/errors.hpp"

namespace glucospec {

Standardizer standardizer_fit(const Eigen::MatrixXd& train_rows) {
    const long n = train_rows.rows();
    if (n < 2)
        throw PipelineError("standardizer needs at least 2 training rows, got " +
                            std::to_string(n));
    Standardizer s;
    s.mean = train_rows.colwise().mean();
    s.sd.resize(train_rows.cols());
    for (long j = 0; j < train_rows.cols(); ++j) {
        const auto col = train_rows.col(j);
        if (col.maxCoeff() == col.minCoeff()) {  // exactly constant fold column
            s.sd[j] = 0.0;
            continue;
        }
        s.sd[j] = std::sqrt((col.array() - s.mean[j]).square().sum() / static_cast<double>(n));
    }
    return s;
}

Eigen::MatrixXd standardizer_apply(const Standardizer& s, const Eigen::MatrixXd& rows) {
    if (rows.cols() != s.mean.size())
        throw PipelineError("standardizer fitted on " + std::to_string(s.mean.size()) +
                            " features, got " + std::to_string(rows.cols()));
    Eigen::MatrixXd out(rows.rows(), rows.cols());
    for (long j = 0; j < rows.cols(); ++j) {
        if (s.sd[j] == 0.0)
            out.col(j).setZero();
        else
            out.col(j) = (rows.col(j).array() - s.mean[j]) / s.sd[j];
    }
    return out;
}

}  // namespace glucospec

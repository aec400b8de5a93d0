#pragma once

#include <Eigen/Core>
#include <string>

namespace glucospec {

/// SVR kernel. gamma <= 0 means "auto": resolved against the training rows
/// as 1 / (n_features * variance of all entries), the scale-style default.
struct Kernel {
    enum class Type { Linear, Rbf, Poly };

    Type type = Type::Linear;
    double gamma = -1.0;
    int degree = 3;
    double coef0 = 0.0;

    static Kernel linear() { return {}; }
    static Kernel rbf(double gamma = -1.0);
    static Kernel poly(int degree = 3, double gamma = -1.0, double coef0 = 0.0);

    std::string name() const;
    void validate() const;
};

double kernel_eval(const Kernel& kernel, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Fills in an auto gamma from the training rows; no-op for explicit gamma
/// or the linear kernel.
Kernel resolve_kernel(Kernel kernel, const Eigen::MatrixXd& train_rows);

/// Symmetric Gram matrix K(i, j) = k(row_i, row_j). Requires resolved gamma.
Eigen::MatrixXd gram_matrix(const Kernel& kernel, const Eigen::MatrixXd& rows);

/// k(row_i, x) for every row.
Eigen::VectorXd kernel_column(const Kernel& kernel, const Eigen::MatrixXd& rows,
                              const Eigen::VectorXd& x);

}  // namespace glucospec

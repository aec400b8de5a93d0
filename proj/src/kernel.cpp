#include "glucospec/kernel.hpp"

#include <cmath>

#include "glucospec/errors.hpp"

namespace glucospec {

Kernel Kernel::rbf(double gamma) {
    Kernel k;
    k.type = Type::Rbf;
    k.gamma = gamma;
    return k;
}

Kernel Kernel::poly(int degree, double gamma, double coef0) {
    Kernel k;
    k.type = Type::Poly;
    k.degree = degree;
    k.gamma = gamma;
    k.coef0 = coef0;
    return k;
}

std::string Kernel::name() const {
    switch (type) {
        case Type::Linear: return "linear";
        case Type::Rbf: return "rbf";
        case Type::Poly: return "poly";
    }
    return "unknown";
}

void Kernel::validate() const {
    if (type == Type::Poly && degree < 1)
        throw ConfigError("polynomial kernel degree must be >= 1, got " +
                          std::to_string(degree));
}

namespace {

void check_dims(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    if (u.size() != v.size())
        throw PipelineError("kernel arguments have dimensions " + std::to_string(u.size()) +
                            " and " + std::to_string(v.size()));
}

double poly_pow(double base, int degree) {
    double r = 1.0;
    for (int i = 0; i < degree; ++i)
        r *= base;
    return r;
}

double need_gamma(const Kernel& k) {
    if (k.type != Kernel::Type::Linear && !(k.gamma > 0.0))
        throw PipelineError("kernel gamma is unresolved; call resolve_kernel on training rows");
    return k.gamma;
}

}  // namespace

double kernel_eval(const Kernel& kernel, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    check_dims(u, v);
    switch (kernel.type) {
        case Kernel::Type::Linear:
            return u.dot(v);
        case Kernel::Type::Rbf:
            return std::exp(-need_gamma(kernel) * (u - v).squaredNorm());
        case Kernel::Type::Poly:
            return poly_pow(need_gamma(kernel) * u.dot(v) + kernel.coef0, kernel.degree);
    }
    return 0.0;
}

Kernel resolve_kernel(Kernel kernel, const Eigen::MatrixXd& train_rows) {
    kernel.validate();
    if (kernel.type == Kernel::Type::Linear || kernel.gamma > 0.0)
        return kernel;
    const double mean = train_rows.mean();
    const double var = (train_rows.array() - mean).square().sum() /
                       static_cast<double>(train_rows.size());
    const double p = static_cast<double>(train_rows.cols());
    kernel.gamma = var > 0.0 ? 1.0 / (p * var) : 1.0 / p;
    return kernel;
}

Eigen::MatrixXd gram_matrix(const Kernel& kernel, const Eigen::MatrixXd& rows) {
    const long n = rows.rows();
    Eigen::MatrixXd k(n, n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j <= i; ++j) {
            const double v = kernel_eval(kernel, rows.row(i), rows.row(j));
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

Eigen::VectorXd kernel_column(const Kernel& kernel, const Eigen::MatrixXd& rows,
                              const Eigen::VectorXd& x) {
    Eigen::VectorXd out(rows.rows());
    for (long i = 0; i < rows.rows(); ++i)
        out[i] = kernel_eval(kernel, rows.row(i), x);
    return out;
}

}  // namespace glucospec

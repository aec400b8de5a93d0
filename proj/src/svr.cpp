#include "glucospec/svr.hpp"

#include <cmath>
#include <limits>

#include "glucospec/errors.hpp"

namespace glucospec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double snap(double v, double c) {
    const double eps = 1e-10 * std::max(1.0, c);
    if (std::abs(v) < eps)
        return 0.0;
    if (std::abs(v - c) < eps)
        return c;
    if (std::abs(v + c) < eps)
        return -c;
    return v;
}

// Gain of moving beta_i by +t and beta_j by -t, exact on each linear piece
// of the l1 term.
double step_gain(double t, double eta, double ri, double rj, double eps, double bi, double bj) {
    return -0.5 * eta * t * t + (ri - rj) * t -
           eps * (std::abs(bi + t) - std::abs(bi)) - eps * (std::abs(bj - t) - std::abs(bj));
}

}  // namespace

SvrModel svr_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Kernel& kernel,
                 double C, double epsilon, const SvrFitOptions& opts) {
    const Kernel resolved = resolve_kernel(kernel, X);
    return svr_fit_prepared(gram_matrix(resolved, X), X, y, resolved, C, epsilon, opts);
}

SvrModel svr_fit_prepared(const Eigen::MatrixXd& gram, const Eigen::MatrixXd& X,
                          const Eigen::VectorXd& y, const Kernel& kernel, double C,
                          double epsilon, const SvrFitOptions& opts) {
    const long n = X.rows();
    if (n < 2)
        throw PipelineError("SVR needs at least 2 training rows");
    if (!(C > 0.0))
        throw PipelineError("SVR penalty C must be positive");
    if (epsilon < 0.0)
        throw PipelineError("SVR epsilon must be non-negative");
    if (gram.rows() != n || gram.cols() != n)
        throw PipelineError("Gram matrix shape does not match the training rows");

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd residual = y;  // r_i = y_i - (K beta)_i

    double b_low = 0.0, b_high = 0.0;
    long iter = 0;
    bool converged = false;

    while (true) {
        // Maximal violating pair: the tightest bounds an optimal bias must
        // satisfy given the current point.
        long i_up = -1, j_dn = -1;
        b_low = -kInf;
        b_high = kInf;
        for (long k = 0; k < n; ++k) {
            const double r = residual[k];
            if (beta[k] < C) {
                const double g = r - (beta[k] >= 0.0 ? epsilon : -epsilon);
                if (g > b_low) {
                    b_low = g;
                    i_up = k;
                }
            }
            if (beta[k] > -C) {
                const double g = r - (beta[k] > 0.0 ? epsilon : -epsilon);
                if (g < b_high) {
                    b_high = g;
                    j_dn = k;
                }
            }
        }
        if (i_up < 0 || j_dn < 0 || b_low - b_high < opts.tol) {
            converged = true;
            break;
        }
        if (iter >= opts.max_iter)
            break;
        ++iter;

        const long i = i_up, j = j_dn;
        const double eta = gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
        const double t_lo = std::max(-C - beta[i], beta[j] - C);
        const double t_hi = std::min(C - beta[i], beta[j] + C);

        // Exact maximization of the concave piecewise quadratic over
        // [t_lo, t_hi]: breakpoints where beta_i + t or beta_j - t changes
        // sign, plus each segment's interior stationary point.
        double knots[4] = {t_lo, t_hi, t_lo, t_lo};
        int n_knots = 2;
        if (-beta[i] > t_lo && -beta[i] < t_hi)
            knots[n_knots++] = -beta[i];
        if (beta[j] > t_lo && beta[j] < t_hi)
            knots[n_knots++] = beta[j];
        for (int a = 1; a < n_knots; ++a)  // insertion sort, at most 4 entries
            for (int b = a; b > 0 && knots[b] < knots[b - 1]; --b)
                std::swap(knots[b], knots[b - 1]);

        const double ri = residual[i], rj = residual[j];
        double best_t = 0.0, best_gain = 0.0;
        auto consider = [&](double t) {
            const double g = step_gain(t, eta, ri, rj, epsilon, beta[i], beta[j]);
            if (g > best_gain) {
                best_gain = g;
                best_t = t;
            }
        };
        for (int s = 0; s + 1 < n_knots; ++s) {
            const double a = knots[s], b = knots[s + 1];
            if (!(b > a))
                continue;
            consider(a);
            consider(b);
            if (eta > 0.0) {
                const double mid = 0.5 * (a + b);
                const double si = (beta[i] + mid) >= 0.0 ? 1.0 : -1.0;
                const double sj = (beta[j] - mid) > 0.0 ? 1.0 : -1.0;
                const double t_star = ((ri - rj) - epsilon * (si - sj)) / eta;
                if (t_star > a && t_star < b)
                    consider(t_star);
            }
        }
        if (best_gain <= 0.0)
            break;  // numerically stuck; report the violation as-is

        double new_i = snap(beta[i] + best_t, C);
        double new_j = snap(beta[j] - best_t, C);
        new_i = std::min(C, std::max(-C, new_i));
        new_j = std::min(C, std::max(-C, new_j));
        const double di = new_i - beta[i];
        const double dj = new_j - beta[j];
        beta[i] = new_i;
        beta[j] = new_j;
        residual.noalias() -= di * gram.col(i) + dj * gram.col(j);
    }

    SvrModel model;
    model.kernel = kernel;
    model.C = C;
    model.epsilon = epsilon;
    model.converged = converged;
    model.iterations = iter;
    model.kkt_violation = std::max(0.0, b_low - b_high);
    if (std::isfinite(b_low) && std::isfinite(b_high))
        model.bias = 0.5 * (b_low + b_high);
    else
        model.bias = y.mean();

    for (long k = 0; k < n; ++k)
        if (beta[k] != 0.0)
            model.support_indices.push_back(k);
    const long n_sv = static_cast<long>(model.support_indices.size());
    model.support_vectors.resize(n_sv, X.cols());
    model.dual_coefs.resize(n_sv);
    for (long s = 0; s < n_sv; ++s) {
        model.support_vectors.row(s) = X.row(model.support_indices[s]);
        model.dual_coefs[s] = beta[model.support_indices[s]];
    }
    return model;
}

Eigen::VectorXd svr_predict(const SvrModel& model, const Eigen::MatrixXd& rows) {
    if (model.n_support() > 0 && rows.cols() != model.support_vectors.cols())
        throw PipelineError("SVR model expects " + std::to_string(model.support_vectors.cols()) +
                            " features, got " + std::to_string(rows.cols()));
    Eigen::VectorXd out(rows.rows());
    for (long r = 0; r < rows.rows(); ++r) {
        double acc = model.bias;
        for (long s = 0; s < model.n_support(); ++s)
            acc += model.dual_coefs[s] *
                   kernel_eval(model.kernel, model.support_vectors.row(s), rows.row(r));
        out[r] = acc;
    }
    return out;
}

}  // namespace glucospec

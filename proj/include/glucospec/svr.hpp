#pragma once

#include <Eigen/Core>
#include <vector>

#include "glucospec/kernel.hpp"

namespace glucospec {

struct SvrFitOptions {
    double tol = 1e-3;       // max tolerated KKT violation
    long max_iter = 100000;  // cap on SMO pair updates
};

/// epsilon-insensitive SVR trained by an SMO-style solver on the dual.
/// dual_coefs holds beta_i = alpha_i - alpha_i^* for the support vectors;
/// every |beta_i| <= C and the betas sum to ~0 (bias feasibility).
struct SvrModel {
    Kernel kernel;
    double C = 1.0;
    double epsilon = 0.1;
    Eigen::MatrixXd support_vectors;    // one stored training row each
    Eigen::VectorXd dual_coefs;
    std::vector<long> support_indices;  // positions in the training set
    double bias = 0.0;
    bool converged = false;
    long iterations = 0;
    double kkt_violation = 0.0;  // b_low - b_high at termination

    long n_support() const { return dual_coefs.size(); }
};

/// Resolves the kernel on X, builds the Gram matrix and solves the dual.
/// Non-convergence within the iteration cap is flagged on the model, never
/// silently dropped.
SvrModel svr_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Kernel& kernel,
                 double C, double epsilon, const SvrFitOptions& opts = {});

/// Same solve against a precomputed Gram matrix of `kernel` over X
/// (kernel must already be resolved). svr_fit delegates here, so both
/// entry points produce identical models.
SvrModel svr_fit_prepared(const Eigen::MatrixXd& gram, const Eigen::MatrixXd& X,
                          const Eigen::VectorXd& y, const Kernel& kernel, double C,
                          double epsilon, const SvrFitOptions& opts = {});

/// yhat(x) = sum_j dual_coef_j K(sv_j, x) + bias.
Eigen::VectorXd svr_predict(const SvrModel& model, const Eigen::MatrixXd& rows);

}  // namespace glucospec

#pragma once

#include <string>
#include <vector>

#include "glucospec/spectrum.hpp"

namespace glucospec {

/// Which per-sample feature construction feeds the regressors.
struct FeatureMethod {
    enum class Kind { Base, Derivative, Tbd, Adpd };

    Kind kind = Kind::Base;
    double tau = 0.1;      // TBD threshold on the scaled derivative
    double scale = 100.0;  // derivative multiplier for Derivative and TBD
    double alpha = 0.0;    // ADPD coupling coefficient

    static FeatureMethod base() { return {}; }
    static FeatureMethod derivative(double scale = 100.0);
    static FeatureMethod tbd(double tau, double scale = 100.0);
    static FeatureMethod adpd(double alpha);

    void validate() const;
    std::string name() const;
    /// tau for TBD, alpha for ADPD, 0 for the parameter-free methods.
    double parameter() const;
};

/// Per-point branch taken by the TBD switch (true = absorbance retained).
struct TbdMask {
    std::vector<bool> kept_absorbance;
};

/// Rows of post-transform features plus the labels they belong to.
struct FeatureMatrix {
    Eigen::MatrixXd rows;  // n_samples x n_features
    Eigen::VectorXd labels;
    std::vector<std::string> sample_ids;

    long n_samples() const { return rows.rows(); }
    long n_features() const { return rows.cols(); }
};

/// F_i = A_i where |scale * d_i| < tau, else the scaled derivative itself.
/// Equality with tau takes the derivative branch.
std::pair<Spectrum, TbdMask> tbd_transform(const Spectrum& absorbance,
                                           const Spectrum& derivative, double tau,
                                           double scale = 100.0);

/// y_i = x_i - alpha * z_i * x_i with z the unscaled first derivative.
Spectrum adpd_transform(const Spectrum& absorbance, const Spectrum& derivative, double alpha);

/// Applies the method to every sample of a preprocessed (absorbance) dataset.
/// Derivatives are taken per sample; row order and labels are preserved.
FeatureMatrix apply_feature_method(const SpectralDataset& dataset, const FeatureMethod& method);

}  // namespace glucospec

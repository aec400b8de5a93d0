#pragma once

#include <optional>
#include <string>
#include <vector>

namespace glucospec {

/// One held-out prediction from a cross-validation run.
struct CvPrediction {
    std::string sample_id;
    double reference = 0.0;  // mg/dl
    double predicted = 0.0;  // mg/dl
    long fold_index = 0;
};

/// mse is the mean of squared residuals (the headline metric); rmse is
/// carried alongside for disambiguation. r2 is empty when every reference
/// is identical (SS_tot = 0).
struct MetricReport {
    double mse = 0.0;
    double rmse = 0.0;
    double mae = 0.0;
    std::optional<double> r2;
    std::vector<double> absolute_errors;
};

MetricReport compute_metrics(const std::vector<CvPrediction>& predictions);

}  // namespace glucospec

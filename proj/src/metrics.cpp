#include "glucospec/metrics.hpp"

#include <cmath>

#include "glucospec/errors.hpp"

namespace glucospec {

MetricReport compute_metrics(const std::vector<CvPrediction>& predictions) {
    const std::size_t n = predictions.size();
    if (n < 2)
        throw PipelineError("metrics need at least 2 predictions, got " + std::to_string(n));

    MetricReport rep;
    rep.absolute_errors.reserve(n);
    double ss_res = 0.0, abs_sum = 0.0, ref_mean = 0.0;
    for (const auto& p : predictions) {
        const double r = p.reference - p.predicted;
        ss_res += r * r;
        abs_sum += std::abs(r);
        ref_mean += p.reference;
        rep.absolute_errors.push_back(std::abs(r));
    }
    ref_mean /= static_cast<double>(n);

    double ss_tot = 0.0;
    for (const auto& p : predictions)
        ss_tot += (p.reference - ref_mean) * (p.reference - ref_mean);

    rep.mse = ss_res / static_cast<double>(n);
    rep.rmse = std::sqrt(rep.mse);
    rep.mae = abs_sum / static_cast<double>(n);
    if (ss_tot > 0.0)
        rep.r2 = 1.0 - ss_res / ss_tot;
    return rep;
}

}  // namespace glucospec

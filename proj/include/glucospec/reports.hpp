#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "glucospec/error_grid.hpp"
#include "glucospec/metrics.hpp"
#include "glucospec/tuning.hpp"

namespace glucospec {

/// Metrics plus the three clinical error grids for one evaluated run.
struct EvaluationReport {
    std::vector<CvPrediction> predictions;
    MetricReport metrics;
    ErrorGridReport clarke;
    ErrorGridReport parkes_type1;
    ErrorGridReport parkes_type2;
};

EvaluationReport build_evaluation_report(const std::vector<CvPrediction>& predictions);

nlohmann::json metrics_to_json(const MetricReport& metrics);
nlohmann::json evaluation_to_json(const EvaluationReport& report);

/// sample_id,reference,predicted,abs_error,clarke_zone,parkes1_zone,parkes2_zone
std::string predictions_csv(const EvaluationReport& report);
std::string ae_distribution_csv(const EvaluationReport& report);
std::string scatter_csv(const EvaluationReport& report);

/// One row per trial with flattened hyperparameters; 17 significant digits
/// so identical runs emit identical bytes.
std::string trace_csv(const SearchTrace& trace);

/// Static SVG of an error grid with the zone boundaries and the predictions.
std::string error_grid_svg(GridKind kind, const std::vector<CvPrediction>& predictions);

/// FNV-1a 64-bit; stable across machines for identical bytes.
std::uint64_t fnv1a64(const std::string& bytes);

/// Inventory of one run's outputs. The timestamp lives only here, so data
/// outputs stay byte-identical across reruns.
class Manifest {
public:
    Manifest(std::string command, std::string config_hash);

    /// Writes content atomically into dir/name and records it.
    void emit(const std::string& dir, const std::string& name, const std::string& content);
    /// Writes dir/manifest.json (not listed in its own inventory).
    void write(const std::string& dir);

private:
    std::string command_;
    std::string config_hash_;
    std::vector<std::pair<std::string, std::size_t>> files_;
};

}  // namespace glucospec

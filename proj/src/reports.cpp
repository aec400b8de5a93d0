#include "glucospec/reports.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "glucospec/errors.hpp"
#include "glucospec/fsutil.hpp"
#include "glucospec/run_config.hpp"
#include "glucospec/version.hpp"

namespace glucospec {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json grid_report_to_json(const ErrorGridReport& rep) {
    json counts;
    for (int z = 0; z < 5; ++z)
        counts[std::string(1, static_cast<char>('A' + z))] = rep.zone_counts[z];
    return json{{"zone_counts", counts}, {"outside_zone_a", rep.outside_zone_a()}};
}

}  // namespace

EvaluationReport build_evaluation_report(const std::vector<CvPrediction>& predictions) {
    EvaluationReport rep;
    rep.predictions = predictions;
    rep.metrics = compute_metrics(predictions);
    rep.clarke = error_grid_report(GridKind::Clarke, predictions);
    rep.parkes_type1 = error_grid_report(GridKind::ParkesType1, predictions);
    rep.parkes_type2 = error_grid_report(GridKind::ParkesType2, predictions);
    return rep;
}

json metrics_to_json(const MetricReport& metrics) {
    json j{{"mse", metrics.mse},
           {"rmse", metrics.rmse},
           {"mae", metrics.mae},
           {"n", metrics.absolute_errors.size()}};
    if (metrics.r2)
        j["r2"] = *metrics.r2;
    else
        j["r2"] = nullptr;  // undefined: all references identical
    return j;
}

json evaluation_to_json(const EvaluationReport& report) {
    json points = json::array();
    for (std::size_t i = 0; i < report.predictions.size(); ++i) {
        const auto& p = report.predictions[i];
        points.push_back(
            {{"sample_id", p.sample_id},
             {"reference", p.reference},
             {"predicted", p.predicted},
             {"abs_error", std::abs(p.reference - p.predicted)},
             {"fold_index", p.fold_index},
             {"clarke", std::string(1, zone_letter(report.clarke.per_point_zones[i]))},
             {"parkes_type1",
              std::string(1, zone_letter(report.parkes_type1.per_point_zones[i]))},
             {"parkes_type2",
              std::string(1, zone_letter(report.parkes_type2.per_point_zones[i]))}});
    }
    return json{{"metrics", metrics_to_json(report.metrics)},
                {"error_grids", {{"clarke", grid_report_to_json(report.clarke)},
                                 {"parkes_type1", grid_report_to_json(report.parkes_type1)},
                                 {"parkes_type2", grid_report_to_json(report.parkes_type2)}}},
                {"points", points}};
}

std::string predictions_csv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "sample_id,reference,predicted,abs_error,clarke_zone,parkes1_zone,parkes2_zone\n";
    for (std::size_t i = 0; i < report.predictions.size(); ++i) {
        const auto& p = report.predictions[i];
        out << p.sample_id << ',' << fmt17(p.reference) << ',' << fmt17(p.predicted) << ','
            << fmt17(std::abs(p.reference - p.predicted)) << ','
            << zone_letter(report.clarke.per_point_zones[i]) << ','
            << zone_letter(report.parkes_type1.per_point_zones[i]) << ','
            << zone_letter(report.parkes_type2.per_point_zones[i]) << '\n';
    }
    return out.str();
}

std::string ae_distribution_csv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "sample_id,abs_error\n";
    for (const auto& p : report.predictions)
        out << p.sample_id << ',' << fmt17(std::abs(p.reference - p.predicted)) << '\n';
    return out.str();
}

std::string scatter_csv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "sample_id,reference,predicted\n";
    for (const auto& p : report.predictions)
        out << p.sample_id << ',' << fmt17(p.reference) << ',' << fmt17(p.predicted) << '\n';
    return out.str();
}

std::string trace_csv(const SearchTrace& trace) {
    std::ostringstream out;
    out << "trial,feature_method,feature_param,derivative_scale,pca_k,model,ridge_alpha,"
           "svr_C,svr_kernel,svr_epsilon,status,mse,rmse,mae,r2,is_best,message\n";
    for (std::size_t t = 0; t < trace.trials.size(); ++t) {
        const auto& trial = trace.trials[t];
        out << t << ',' << trial.feature.name() << ',' << fmt17(trial.feature.parameter())
            << ',';
        if (trial.feature.kind == FeatureMethod::Kind::Tbd ||
            trial.feature.kind == FeatureMethod::Kind::Derivative)
            out << fmt17(trial.feature.scale);
        out << ',' << trial.pca_k << ',' << model_family(trial.model) << ',';
        if (const auto* ridge = std::get_if<RidgeSpec>(&trial.model)) {
            out << fmt17(ridge->alpha) << ",,,";
        } else {
            const auto& svr = std::get<SvrSpec>(trial.model);
            out << ',' << fmt17(svr.C) << ',' << svr.kernel.name() << ','
                << fmt17(svr.epsilon);
        }
        const char* status = trial.status == TrialResult::Status::Ok ? "ok"
                             : trial.status == TrialResult::Status::Skipped ? "skipped"
                                                                            : "error";
        out << ',' << status << ',';
        if (trial.status == TrialResult::Status::Ok) {
            out << fmt17(trial.metrics.mse) << ',' << fmt17(trial.metrics.rmse) << ','
                << fmt17(trial.metrics.mae) << ',';
            if (trial.metrics.r2)
                out << fmt17(*trial.metrics.r2);
        } else {
            out << ",,,";
        }
        out << ',' << (static_cast<long>(t) == trace.best_index ? 1 : 0) << ',';
        // commas in messages would break the row; swap them out
        std::string msg = trial.message;
        for (char& ch : msg)
            if (ch == ',' || ch == '\n')
                ch = ';';
        out << msg << '\n';
    }
    return out.str();
}

std::string error_grid_svg(GridKind kind, const std::vector<CvPrediction>& predictions) {
    const double canvas = kind == GridKind::Clarke ? 400.0 : 550.0;
    const double size = 640.0, margin = 45.0;
    const double scale = (size - 2 * margin) / canvas;
    auto px = [&](double v) { return margin + v * scale; };
    auto py = [&](double v) { return size - margin - v * scale; };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << size << "' height='" << size
        << "' viewBox='0 0 " << size << ' ' << size << "'>\n"
        << "<rect x='" << px(0) << "' y='" << py(canvas) << "' width='" << canvas * scale
        << "' height='" << canvas * scale << "' fill='white' stroke='black'/>\n"
        << "<line x1='" << px(0) << "' y1='" << py(0) << "' x2='" << px(canvas) << "' y2='"
        << py(canvas) << "' stroke='#bbbbbb' stroke-dasharray='4 3'/>\n";

    if (kind == GridKind::Clarke) {
        // Boundary segments of the published inequalities, clipped to the canvas.
        auto line = [&](double x1, double y1, double x2, double y2) {
            svg << "<line x1='" << px(x1) << "' y1='" << py(y1) << "' x2='" << px(x2)
                << "' y2='" << py(y2) << "' stroke='#444444'/>\n";
        };
        line(70.0 / 1.2, 70, 400.0 / 1.2, 400);      // upper A border p = 1.2 r
        line(70, 56, 400, 320);                      // lower A border p = 0.8 r
        line(0, 70, 70.0 / 1.2, 70);                 // A square top
        line(70, 0, 70, 56);                         // A square right
        line(70, 180, 290, 400);                     // upper C
        line(130, 0, 180, 70);                       // lower C
        line(0, 180, 70, 180);                       // E-left top / D-left top
        line(70, 70, 70, 180);                       // D-left right edge
        line(0, 70, 58.333333, 70);                  // D-left bottom
        line(240, 70, 400, 70);                      // D-right bottom
        line(240, 70, 240, 180);                     // D-right left edge
        line(240, 180, 400, 180);                    // D-right top
        line(180, 0, 180, 70);                       // E-right left edge
    } else {
        for (const auto& poly : parkes_polygons(kind)) {
            svg << "<polygon points='";
            for (const auto& v : poly.vertices)
                svg << px(v[0]) << ',' << py(v[1]) << ' ';
            svg << "' fill='none' stroke='#444444'/>\n";
        }
    }

    for (const auto& p : predictions)
        if (p.reference <= canvas && p.predicted <= canvas)
            svg << "<circle cx='" << px(p.reference) << "' cy='" << py(p.predicted)
                << "' r='3' fill='#1f77b4' fill-opacity='0.7'/>\n";
    svg << "<text x='" << size / 2 << "' y='" << size - 8
        << "' text-anchor='middle' font-size='13'>reference glucose (mg/dl)</text>\n"
        << "<text x='12' y='" << size / 2 << "' font-size='13' transform='rotate(-90 12 "
        << size / 2 << ")' text-anchor='middle'>predicted glucose (mg/dl)</text>\n"
        << "</svg>\n";
    return svg.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

Manifest::Manifest(std::string command, std::string config_hash)
    : command_(std::move(command)), config_hash_(std::move(config_hash)) {}

void Manifest::emit(const std::string& dir, const std::string& name,
                    const std::string& content) {
    atomic_write_file((fs::path(dir) / name).string(), content);
    files_.push_back({name, content.size()});
}

void Manifest::write(const std::string& dir) {
    char stamp[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);

    json files = json::array();
    for (const auto& [name, bytes] : files_)
        files.push_back({{"name", name}, {"bytes", bytes}});
    const json doc{{"artifact_version", kVersion},
                   {"command", command_},
                   {"config_hash", config_hash_},
                   {"created_utc", stamp},
                   {"files", files}};
    atomic_write_file((fs::path(dir) / "manifest.json").string(), doc.dump(2) + "\n");
}

}  // namespace glucospec

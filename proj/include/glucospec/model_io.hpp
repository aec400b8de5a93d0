#pragma once

#include <nlohmann/json_fwd.hpp>
#include <variant>

#include "glucospec/ridge.hpp"
#include "glucospec/svr.hpp"

namespace glucospec {

using TrainedModel = std::variant<RidgeModel, SvrModel>;

/// Versioned JSON (schema_version, family tag, kernel/hyperparameters,
/// coefficient arrays). Doubles serialize shortest-round-trip, so loading
/// restores them exactly.
nlohmann::json model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const nlohmann::json& doc);

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

Eigen::VectorXd trained_predict(const TrainedModel& model, const Eigen::MatrixXd& rows);

}  // namespace glucospec

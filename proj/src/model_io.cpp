#include "glucospec/model_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "glucospec/errors.hpp"
#include "glucospec/version.hpp"

namespace glucospec {

using nlohmann::json;

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (long i = 0; i < v.size(); ++i)
        arr.push_back(v[i]);
    return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        v[i] = arr[i].get<double>();
    return v;
}

json kernel_to_json(const Kernel& k) {
    json j{{"type", k.name()}};
    if (k.type != Kernel::Type::Linear) {
        j["gamma"] = k.gamma;
        if (k.type == Kernel::Type::Poly) {
            j["degree"] = k.degree;
            j["coef0"] = k.coef0;
        }
    }
    return j;
}

Kernel kernel_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    Kernel k;
    if (type == "linear") {
        k = Kernel::linear();
    } else if (type == "rbf") {
        k = Kernel::rbf(j.value("gamma", -1.0));
    } else if (type == "poly") {
        k = Kernel::poly(j.value("degree", 3), j.value("gamma", -1.0), j.value("coef0", 0.0));
    } else {
        throw ConfigError("unknown kernel type '" + type + "'");
    }
    return k;
}

}  // namespace

json model_to_json(const TrainedModel& model) {
    json j{{"schema_version", kModelSchemaVersion}};
    if (const auto* ridge = std::get_if<RidgeModel>(&model)) {
        j["family"] = "ridge";
        j["alpha"] = ridge->alpha;
        j["intercept"] = ridge->intercept;
        j["coefficients"] = vector_to_json(ridge->coefficients);
    } else {
        const auto& svr = std::get<SvrModel>(model);
        j["family"] = "svr";
        j["kernel"] = kernel_to_json(svr.kernel);
        j["C"] = svr.C;
        j["epsilon"] = svr.epsilon;
        j["bias"] = svr.bias;
        j["converged"] = svr.converged;
        j["iterations"] = svr.iterations;
        j["kkt_violation"] = svr.kkt_violation;
        j["dual_coefs"] = vector_to_json(svr.dual_coefs);
        j["support_indices"] = svr.support_indices;
        json sv = json::array();
        for (long r = 0; r < svr.support_vectors.rows(); ++r)
            sv.push_back(vector_to_json(svr.support_vectors.row(r)));
        j["support_vectors"] = sv;
    }
    return j;
}

TrainedModel model_from_json(const json& doc) {
    if (doc.value("schema_version", -1) != kModelSchemaVersion)
        throw ConfigError("unsupported model schema_version");
    const std::string family = doc.at("family").get<std::string>();
    if (family == "ridge") {
        RidgeModel m;
        m.alpha = doc.at("alpha").get<double>();
        m.intercept = doc.at("intercept").get<double>();
        m.coefficients = vector_from_json(doc.at("coefficients"));
        return m;
    }
    if (family == "svr") {
        SvrModel m;
        m.kernel = kernel_from_json(doc.at("kernel"));
        m.C = doc.at("C").get<double>();
        m.epsilon = doc.at("epsilon").get<double>();
        m.bias = doc.at("bias").get<double>();
        m.converged = doc.value("converged", true);
        m.iterations = doc.value("iterations", 0L);
        m.kkt_violation = doc.value("kkt_violation", 0.0);
        m.dual_coefs = vector_from_json(doc.at("dual_coefs"));
        m.support_indices = doc.at("support_indices").get<std::vector<long>>();
        const auto& sv = doc.at("support_vectors");
        const long cols = sv.empty() ? 0 : static_cast<long>(sv[0].size());
        m.support_vectors.resize(static_cast<long>(sv.size()), cols);
        for (std::size_t r = 0; r < sv.size(); ++r)
            m.support_vectors.row(r) = vector_from_json(sv[r]).transpose();
        return m;
    }
    throw ConfigError("unknown model family '" + family + "'");
}

void save_model(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << model_to_json(model).dump(2) << '\n'))
        throw IoError("cannot write model to " + path);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open model file " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw IoError("model file " + path + ": " + e.what());
    }
    return model_from_json(doc);
}

Eigen::VectorXd trained_predict(const TrainedModel& model, const Eigen::MatrixXd& rows) {
    if (const auto* ridge = std::get_if<RidgeModel>(&model))
        return ridge_predict(*ridge, rows);
    return svr_predict(std::get<SvrModel>(model), rows);
}

}  // namespace glucospec

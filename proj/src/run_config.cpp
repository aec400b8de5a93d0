#include "glucospec/run_config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

#include "glucospec/csv_io.hpp"
#include "glucospec/errors.hpp"
#include "glucospec/version.hpp"

namespace glucospec {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!known.count(key))
            throw ConfigError(where + ": unknown key '" + key + "'");
}

Kernel kernel_from_name(const std::string& name, const json& j) {
    if (name == "linear")
        return Kernel::linear();
    if (name == "rbf")
        return Kernel::rbf(j.value("gamma", -1.0));
    if (name == "poly")
        return Kernel::poly(j.value("degree", 3), j.value("gamma", -1.0),
                            j.value("coef0", 0.0));
    throw ConfigError("unknown kernel '" + name + "' (expected linear, rbf or poly)");
}

SynthesisConfig synthesis_from_json(const json& j) {
    reject_unknown_keys(j, {"n_samples", "glucose_range", "seed", "noise_sd",
                            "baseline_amplitude", "band_centers", "band_widths",
                            "band_gains", "grid"},
                        "dataset.synthesis");
    SynthesisConfig c;
    c.n_samples = j.value("n_samples", c.n_samples);
    if (j.contains("glucose_range")) {
        const auto& r = j.at("glucose_range");
        if (!r.is_array() || r.size() != 2)
            throw ConfigError("dataset.synthesis.glucose_range must be [low, high]");
        c.glucose_low = r[0].get<double>();
        c.glucose_high = r[1].get<double>();
    }
    c.seed = j.value("seed", c.seed);
    c.noise_sd = j.value("noise_sd", c.noise_sd);
    c.baseline_amplitude = j.value("baseline_amplitude", c.baseline_amplitude);
    if (j.contains("band_centers"))
        c.band_centers = j.at("band_centers").get<std::vector<double>>();
    if (j.contains("band_widths"))
        c.band_widths = j.at("band_widths").get<std::vector<double>>();
    if (j.contains("band_gains"))
        c.band_gains = j.at("band_gains").get<std::vector<double>>();
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        reject_unknown_keys(g, {"start", "step", "count"}, "dataset.synthesis.grid");
        c.grid.start = g.value("start", c.grid.start);
        c.grid.step = g.value("step", c.grid.step);
        c.grid.count = g.value("count", c.grid.count);
    }
    c.validate();
    return c;
}

json synthesis_to_json(const SynthesisConfig& c) {
    return json{{"n_samples", c.n_samples},
                {"glucose_range", {c.glucose_low, c.glucose_high}},
                {"seed", c.seed},
                {"noise_sd", c.noise_sd},
                {"baseline_amplitude", c.baseline_amplitude},
                {"band_centers", c.band_centers},
                {"band_widths", c.band_widths},
                {"band_gains", c.band_gains},
                {"grid", {{"start", c.grid.start}, {"step", c.grid.step},
                          {"count", c.grid.count}}}};
}

}  // namespace

json feature_method_to_json(const FeatureMethod& m) {
    json j{{"method", m.name()}};
    switch (m.kind) {
        case FeatureMethod::Kind::Base:
            break;
        case FeatureMethod::Kind::Derivative:
            j["scale"] = m.scale;
            break;
        case FeatureMethod::Kind::Tbd:
            j["tau"] = m.tau;
            j["scale"] = m.scale;
            break;
        case FeatureMethod::Kind::Adpd:
            j["alpha"] = m.alpha;
            break;
    }
    return j;
}

FeatureMethod feature_method_from_json(const json& j) {
    reject_unknown_keys(j, {"method", "tau", "scale", "alpha"}, "features");
    const std::string method = j.at("method").get<std::string>();
    FeatureMethod m;
    if (method == "base") {
        m = FeatureMethod::base();
    } else if (method == "derivative") {
        m = FeatureMethod::derivative(j.value("scale", 100.0));
    } else if (method == "tbd") {
        if (!j.contains("tau"))
            throw ConfigError("features: TBD needs 'tau'");
        m = FeatureMethod::tbd(j.at("tau").get<double>(), j.value("scale", 100.0));
    } else if (method == "adpd") {
        if (!j.contains("alpha"))
            throw ConfigError("features: ADPD needs 'alpha'");
        m = FeatureMethod::adpd(j.at("alpha").get<double>());
    } else {
        throw ConfigError("unknown feature method '" + method + "'");
    }
    m.validate();
    return m;
}

json model_spec_to_json(const ModelSpec& m) {
    if (const auto* ridge = std::get_if<RidgeSpec>(&m))
        return json{{"family", "ridge"}, {"alpha", ridge->alpha}};
    const auto& svr = std::get<SvrSpec>(m);
    json j{{"family", "svr"},
           {"kernel", svr.kernel.name()},
           {"C", svr.C},
           {"epsilon", svr.epsilon}};
    if (svr.kernel.type != Kernel::Type::Linear && svr.kernel.gamma > 0.0)
        j["gamma"] = svr.kernel.gamma;
    if (svr.kernel.type == Kernel::Type::Poly) {
        j["degree"] = svr.kernel.degree;
        j["coef0"] = svr.kernel.coef0;
    }
    return j;
}

ModelSpec model_spec_from_json(const json& j) {
    reject_unknown_keys(j, {"family", "alpha", "kernel", "C", "epsilon", "gamma", "degree",
                            "coef0"},
                        "model");
    const std::string family = j.at("family").get<std::string>();
    if (family == "ridge") {
        RidgeSpec spec;
        spec.alpha = j.at("alpha").get<double>();
        if (spec.alpha < 0.0)
            throw ConfigError("model.alpha must be >= 0");
        return spec;
    }
    if (family == "svr") {
        SvrSpec spec;
        spec.kernel = kernel_from_name(j.value("kernel", "rbf"), j);
        spec.C = j.at("C").get<double>();
        spec.epsilon = j.at("epsilon").get<double>();
        if (!(spec.C > 0.0))
            throw ConfigError("model.C must be positive");
        if (spec.epsilon < 0.0)
            throw ConfigError("model.epsilon must be >= 0");
        return spec;
    }
    throw ConfigError("unknown model family '" + family + "'");
}

SearchSpace SearchConfig::to_space() const {
    SearchSpace s = default_search_space(feature_family, model_family);
    s.derivative_scale = derivative_scale;
    if (feature_params)
        s.feature_params = *feature_params;
    if (pca_ks)
        s.pca_ks = *pca_ks;
    if (ridge_alphas)
        s.ridge_alphas = *ridge_alphas;
    if (svr_cs)
        s.svr_cs = *svr_cs;
    if (svr_epsilons)
        s.svr_epsilons = *svr_epsilons;
    if (svr_kernels) {
        s.svr_kernels.clear();
        for (const auto& name : *svr_kernels)
            s.svr_kernels.push_back(kernel_from_name(name, json::object()));
    }
    s.validate();
    return s;
}

SpectralDataset RunConfig::load_dataset() const {
    if (synthesis)
        return synthesize(*synthesis);
    return ingest_csv(*spectra_csv, *labels_csv);
}

PipelineConfig RunConfig::pipeline() const {
    if (!feature || !pca_k || !model)
        throw ConfigError("config needs 'features', 'pca_components' and 'model' "
                          "for this command");
    PipelineConfig p;
    p.preprocess = preprocess;
    p.feature = *feature;
    p.pca_k = *pca_k;
    p.model = *model;
    return p;
}

RunConfig run_config_from_json(const json& doc) {
    if (!doc.is_object())
        throw ConfigError("run config must be a JSON object");
    reject_unknown_keys(doc, {"schema_version", "dataset", "preprocess", "features",
                              "pca_components", "model", "search", "output_dir", "threads"},
                        "config");
    if (doc.value("schema_version", -1) != kConfigSchemaVersion)
        throw ConfigError("config schema_version must be " +
                          std::to_string(kConfigSchemaVersion));

    RunConfig c;
    if (!doc.contains("dataset"))
        throw ConfigError("config needs a 'dataset' section");
    const auto& ds = doc.at("dataset");
    reject_unknown_keys(ds, {"spectra_csv", "labels_csv", "synthesis"}, "dataset");
    const bool has_paths = ds.contains("spectra_csv") || ds.contains("labels_csv");
    const bool has_synth = ds.contains("synthesis");
    if (has_paths == has_synth)
        throw ConfigError("dataset needs exactly one of {spectra_csv + labels_csv, synthesis}");
    if (has_paths) {
        if (!ds.contains("spectra_csv") || !ds.contains("labels_csv"))
            throw ConfigError("dataset needs both spectra_csv and labels_csv");
        c.spectra_csv = ds.at("spectra_csv").get<std::string>();
        c.labels_csv = ds.at("labels_csv").get<std::string>();
    } else {
        c.synthesis = synthesis_from_json(ds.at("synthesis"));
    }

    if (doc.contains("preprocess")) {
        const auto& p = doc.at("preprocess");
        reject_unknown_keys(p, {"savgol_window", "savgol_polyorder", "rubberband", "minmax"},
                            "preprocess");
        c.preprocess.savgol.window = p.value("savgol_window", c.preprocess.savgol.window);
        c.preprocess.savgol.polyorder =
            p.value("savgol_polyorder", c.preprocess.savgol.polyorder);
        c.preprocess.apply_rubberband = p.value("rubberband", true);
        c.preprocess.apply_minmax = p.value("minmax", true);
    }
    if (doc.contains("features"))
        c.feature = feature_method_from_json(doc.at("features"));
    if (doc.contains("pca_components")) {
        c.pca_k = doc.at("pca_components").get<long>();
        if (*c.pca_k < 1)
            throw ConfigError("pca_components must be >= 1");
    }
    if (doc.contains("model"))
        c.model = model_spec_from_json(doc.at("model"));
    if (doc.contains("search")) {
        const auto& s = doc.at("search");
        reject_unknown_keys(s, {"feature_family", "model_family", "feature_params", "pca_ks",
                                "ridge_alphas", "svr_C", "svr_kernels", "svr_epsilons",
                                "derivative_scale"},
                            "search");
        SearchConfig sc;
        sc.feature_family =
            feature_family_from_string(s.at("feature_family").get<std::string>());
        sc.model_family = model_family_from_string(s.at("model_family").get<std::string>());
        if (s.contains("feature_params"))
            sc.feature_params = s.at("feature_params").get<std::vector<double>>();
        if (s.contains("pca_ks"))
            sc.pca_ks = s.at("pca_ks").get<std::vector<long>>();
        if (s.contains("ridge_alphas"))
            sc.ridge_alphas = s.at("ridge_alphas").get<std::vector<double>>();
        if (s.contains("svr_C"))
            sc.svr_cs = s.at("svr_C").get<std::vector<double>>();
        if (s.contains("svr_kernels"))
            sc.svr_kernels = s.at("svr_kernels").get<std::vector<std::string>>();
        if (s.contains("svr_epsilons"))
            sc.svr_epsilons = s.at("svr_epsilons").get<std::vector<double>>();
        sc.derivative_scale = s.value("derivative_scale", 100.0);
        sc.to_space();  // validate eagerly
        c.search = sc;
    }
    c.output_dir = doc.value("output_dir", c.output_dir);
    c.threads = doc.value("threads", 0);
    if (c.threads < 0)
        throw ConfigError("threads must be >= 0");
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
    return run_config_from_json(doc);
}

json run_config_to_json(const RunConfig& config) {
    json doc{{"schema_version", kConfigSchemaVersion}};
    if (config.synthesis)
        doc["dataset"] = json{{"synthesis", synthesis_to_json(*config.synthesis)}};
    else
        doc["dataset"] = json{{"spectra_csv", *config.spectra_csv},
                              {"labels_csv", *config.labels_csv}};
    doc["preprocess"] = json{{"savgol_window", config.preprocess.savgol.window},
                             {"savgol_polyorder", config.preprocess.savgol.polyorder},
                             {"rubberband", config.preprocess.apply_rubberband},
                             {"minmax", config.preprocess.apply_minmax}};
    if (config.feature)
        doc["features"] = feature_method_to_json(*config.feature);
    if (config.pca_k)
        doc["pca_components"] = *config.pca_k;
    if (config.model)
        doc["model"] = model_spec_to_json(*config.model);
    doc["output_dir"] = config.output_dir;
    if (config.threads != 0)
        doc["threads"] = config.threads;
    return doc;
}

}  // namespace glucospec

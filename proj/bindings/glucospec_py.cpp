#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "glucospec/csv_io.hpp"
#include "glucospec/error_grid.hpp"
#include "glucospec/loocv.hpp"
#include "glucospec/pca.hpp"
#include "glucospec/standardize.hpp"
#include "glucospec/synth.hpp"
#include "glucospec/tuning.hpp"
#include "glucospec/version.hpp"

namespace py = pybind11;
using namespace glucospec;

namespace {

std::string zone_str(Zone z) { return std::string(1, zone_letter(z)); }

GridKind grid_kind_from_string(const std::string& name) {
    if (name == "clarke") return GridKind::Clarke;
    if (name == "parkes_type1") return GridKind::ParkesType1;
    if (name == "parkes_type2") return GridKind::ParkesType2;
    throw ConfigError("unknown grid kind '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Blood glucose estimation from MIR spectra: preprocessing, TBD/ADPD "
              "feature transforms, PCA + Ridge/SVR under LOOCV, clinical error grids.";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<PipelineError>(m, "PipelineError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<WavenumberGrid>(m, "WavenumberGrid")
        .def(py::init<>())
        .def(py::init([](double start, double step, long count) {
                 WavenumberGrid g{start, step, count};
                 g.validate();
                 return g;
             }),
             py::arg("start"), py::arg("step"), py::arg("count"))
        .def_readwrite("start", &WavenumberGrid::start)
        .def_readwrite("step", &WavenumberGrid::step)
        .def_readwrite("count", &WavenumberGrid::count)
        .def("at", &WavenumberGrid::at);

    py::enum_<SpectrumKind>(m, "SpectrumKind")
        .value("Transmittance", SpectrumKind::Transmittance)
        .value("Absorbance", SpectrumKind::Absorbance)
        .value("Feature", SpectrumKind::Feature);

    py::class_<Spectrum>(m, "Spectrum")
        .def(py::init<>())
        .def(py::init([](const WavenumberGrid& grid, const Eigen::VectorXd& values,
                         SpectrumKind kind) {
                 Spectrum s{grid, values, kind};
                 s.validate();
                 return s;
             }),
             py::arg("grid"), py::arg("values"),
             py::arg("kind") = SpectrumKind::Transmittance)
        .def_readwrite("grid", &Spectrum::grid)
        .def_readwrite("values", &Spectrum::values)
        .def_readwrite("kind", &Spectrum::kind)
        .def("__len__", &Spectrum::size);

    py::class_<SpectralDataset>(m, "SpectralDataset")
        .def(py::init<>())
        .def_readwrite("spectra", &SpectralDataset::spectra)
        .def_readwrite("labels", &SpectralDataset::labels)
        .def_readwrite("sample_ids", &SpectralDataset::sample_ids)
        .def_property_readonly("n_samples", &SpectralDataset::n_samples)
        .def("validate", &SpectralDataset::validate);

    py::class_<SynthesisConfig>(m, "SynthesisConfig")
        .def(py::init<>())
        .def_readwrite("n_samples", &SynthesisConfig::n_samples)
        .def_readwrite("glucose_low", &SynthesisConfig::glucose_low)
        .def_readwrite("glucose_high", &SynthesisConfig::glucose_high)
        .def_readwrite("seed", &SynthesisConfig::seed)
        .def_readwrite("noise_sd", &SynthesisConfig::noise_sd)
        .def_readwrite("baseline_amplitude", &SynthesisConfig::baseline_amplitude)
        .def_readwrite("band_centers", &SynthesisConfig::band_centers)
        .def_readwrite("band_widths", &SynthesisConfig::band_widths)
        .def_readwrite("band_gains", &SynthesisConfig::band_gains)
        .def_readwrite("grid", &SynthesisConfig::grid);

    m.def("synthesize", &synthesize, py::arg("config"),
          "Seeded Beer-Lambert synthetic dataset");
    m.def("ingest_csv", &ingest_csv, py::arg("spectra_path"), py::arg("labels_path"));
    m.def("write_csv", &write_csv, py::arg("dataset"), py::arg("spectra_path"),
          py::arg("labels_path"));

    py::class_<SavGolConfig>(m, "SavGolConfig")
        .def(py::init<>())
        .def(py::init([](long window, int polyorder) {
                 return SavGolConfig{window, polyorder};
             }),
             py::arg("window"), py::arg("polyorder"))
        .def_readwrite("window", &SavGolConfig::window)
        .def_readwrite("polyorder", &SavGolConfig::polyorder);

    py::class_<PreprocessConfig>(m, "PreprocessConfig")
        .def(py::init<>())
        .def_readwrite("savgol", &PreprocessConfig::savgol)
        .def_readwrite("apply_rubberband", &PreprocessConfig::apply_rubberband)
        .def_readwrite("apply_minmax", &PreprocessConfig::apply_minmax);

    m.def("to_absorbance", &to_absorbance);
    m.def("rubberband_correct", &rubberband_correct);
    m.def("minmax_normalize", &minmax_normalize);
    m.def("savgol_smooth", &savgol_smooth, py::arg("spectrum"), py::arg("config"));
    m.def("first_derivative", &first_derivative);
    m.def("preprocess_chain", &preprocess_chain, py::arg("dataset"), py::arg("config"));

    py::class_<FeatureMethod>(m, "FeatureMethod")
        .def_static("base", &FeatureMethod::base)
        .def_static("derivative", &FeatureMethod::derivative, py::arg("scale") = 100.0)
        .def_static("tbd", &FeatureMethod::tbd, py::arg("tau"), py::arg("scale") = 100.0)
        .def_static("adpd", &FeatureMethod::adpd, py::arg("alpha"))
        .def_readwrite("tau", &FeatureMethod::tau)
        .def_readwrite("scale", &FeatureMethod::scale)
        .def_readwrite("alpha", &FeatureMethod::alpha)
        .def_property_readonly("name", &FeatureMethod::name);

    py::class_<TbdMask>(m, "TbdMask")
        .def_readonly("kept_absorbance", &TbdMask::kept_absorbance);

    py::class_<FeatureMatrix>(m, "FeatureMatrix")
        .def_readwrite("rows", &FeatureMatrix::rows)
        .def_readwrite("labels", &FeatureMatrix::labels)
        .def_readwrite("sample_ids", &FeatureMatrix::sample_ids);

    m.def("tbd_transform", &tbd_transform, py::arg("absorbance"), py::arg("derivative"),
          py::arg("tau"), py::arg("scale") = 100.0);
    m.def("adpd_transform", &adpd_transform, py::arg("absorbance"), py::arg("derivative"),
          py::arg("alpha"));
    m.def("apply_feature_method", &apply_feature_method, py::arg("dataset"),
          py::arg("method"));

    py::class_<Standardizer>(m, "Standardizer")
        .def_readonly("mean", &Standardizer::mean)
        .def_readonly("sd", &Standardizer::sd);
    m.def("standardizer_fit", &standardizer_fit);
    m.def("standardizer_apply", &standardizer_apply);

    py::class_<PcaModel>(m, "PcaModel")
        .def_readonly("components", &PcaModel::components)
        .def_readonly("center", &PcaModel::center)
        .def_readonly("explained_variance", &PcaModel::explained_variance)
        .def("truncated", &PcaModel::truncated);
    m.def("pca_fit", &pca_fit, py::arg("train_rows"), py::arg("k"));
    m.def("pca_fit_full", &pca_fit_full);
    m.def("pca_transform", &pca_transform);
    m.def("pca_inverse_transform", &pca_inverse_transform);

    py::class_<RidgeModel>(m, "RidgeModel")
        .def_readonly("coefficients", &RidgeModel::coefficients)
        .def_readonly("intercept", &RidgeModel::intercept)
        .def_readonly("alpha", &RidgeModel::alpha);
    m.def("ridge_fit", &ridge_fit, py::arg("X"), py::arg("y"), py::arg("alpha"));
    m.def("ridge_predict", &ridge_predict);

    py::class_<Kernel>(m, "Kernel")
        .def_static("linear", &Kernel::linear)
        .def_static("rbf", &Kernel::rbf, py::arg("gamma") = -1.0)
        .def_static("poly", &Kernel::poly, py::arg("degree") = 3, py::arg("gamma") = -1.0,
                    py::arg("coef0") = 0.0)
        .def_readwrite("gamma", &Kernel::gamma)
        .def_readwrite("degree", &Kernel::degree)
        .def_readwrite("coef0", &Kernel::coef0)
        .def_property_readonly("name", &Kernel::name);
    m.def("kernel_eval", &kernel_eval);
    m.def("resolve_kernel", &resolve_kernel);
    m.def("gram_matrix", &gram_matrix);

    py::class_<SvrFitOptions>(m, "SvrFitOptions")
        .def(py::init<>())
        .def_readwrite("tol", &SvrFitOptions::tol)
        .def_readwrite("max_iter", &SvrFitOptions::max_iter);

    py::class_<SvrModel>(m, "SvrModel")
        .def_readonly("C", &SvrModel::C)
        .def_readonly("epsilon", &SvrModel::epsilon)
        .def_readonly("support_vectors", &SvrModel::support_vectors)
        .def_readonly("dual_coefs", &SvrModel::dual_coefs)
        .def_readonly("support_indices", &SvrModel::support_indices)
        .def_readonly("bias", &SvrModel::bias)
        .def_readonly("converged", &SvrModel::converged)
        .def_readonly("iterations", &SvrModel::iterations)
        .def_readonly("kkt_violation", &SvrModel::kkt_violation);
    m.def("svr_fit", &svr_fit, py::arg("X"), py::arg("y"), py::arg("kernel"), py::arg("C"),
          py::arg("epsilon"), py::arg("options") = SvrFitOptions{});
    m.def("svr_predict", &svr_predict);

    py::class_<CvPrediction>(m, "CvPrediction")
        .def(py::init<>())
        .def(py::init([](std::string id, double ref, double pred, long fold) {
                 return CvPrediction{std::move(id), ref, pred, fold};
             }),
             py::arg("sample_id"), py::arg("reference"), py::arg("predicted"),
             py::arg("fold_index") = 0)
        .def_readwrite("sample_id", &CvPrediction::sample_id)
        .def_readwrite("reference", &CvPrediction::reference)
        .def_readwrite("predicted", &CvPrediction::predicted)
        .def_readwrite("fold_index", &CvPrediction::fold_index);

    py::class_<MetricReport>(m, "MetricReport")
        .def_readonly("mse", &MetricReport::mse)
        .def_readonly("rmse", &MetricReport::rmse)
        .def_readonly("mae", &MetricReport::mae)
        .def_property_readonly(
            "r2", [](const MetricReport& r) { return r.r2; })  // None when undefined
        .def_readonly("absolute_errors", &MetricReport::absolute_errors);
    m.def("compute_metrics", &compute_metrics);

    m.def("clarke_zone",
          [](double r, double p) { return zone_str(clarke_zone(r, p)); },
          py::arg("reference"), py::arg("predicted"));
    m.def("parkes_zone",
          [](const std::string& grid, double r, double p) {
              return zone_str(parkes_zone(grid_kind_from_string(grid), r, p));
          },
          py::arg("grid"), py::arg("reference"), py::arg("predicted"),
          "grid is 'parkes_type1' or 'parkes_type2'");

    py::class_<ErrorGridReport>(m, "ErrorGridReport")
        .def_property_readonly("zone_counts",
                               [](const ErrorGridReport& r) {
                                   py::dict d;
                                   for (int z = 0; z < 5; ++z)
                                       d[py::str(std::string(
                                           1, static_cast<char>('A' + z)))] =
                                           r.zone_counts[z];
                                   return d;
                               })
        .def_property_readonly("per_point_zones",
                               [](const ErrorGridReport& r) {
                                   std::vector<std::string> zones;
                                   for (Zone z : r.per_point_zones)
                                       zones.push_back(zone_str(z));
                                   return zones;
                               })
        .def_property_readonly("outside_zone_a", &ErrorGridReport::outside_zone_a);
    m.def("error_grid_report",
          [](const std::string& grid, const std::vector<CvPrediction>& preds) {
              return error_grid_report(grid_kind_from_string(grid), preds);
          },
          py::arg("grid"), py::arg("predictions"));

    py::class_<RidgeSpec>(m, "RidgeSpec")
        .def(py::init([](double alpha) { return RidgeSpec{alpha}; }), py::arg("alpha"))
        .def_readwrite("alpha", &RidgeSpec::alpha);
    py::class_<SvrSpec>(m, "SvrSpec")
        .def(py::init([](const Kernel& k, double C, double eps) {
                 return SvrSpec{k, C, eps};
             }),
             py::arg("kernel"), py::arg("C"), py::arg("epsilon"))
        .def_readwrite("kernel", &SvrSpec::kernel)
        .def_readwrite("C", &SvrSpec::C)
        .def_readwrite("epsilon", &SvrSpec::epsilon);

    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("preprocess", &PipelineConfig::preprocess)
        .def_readwrite("feature", &PipelineConfig::feature)
        .def_readwrite("pca_k", &PipelineConfig::pca_k)
        .def_readwrite("model", &PipelineConfig::model)
        .def_readwrite("svr_options", &PipelineConfig::svr_options);

    m.def("loocv_run", &loocv_run, py::arg("dataset"), py::arg("config"));
    m.def("loocv_over_features", &loocv_over_features, py::arg("features"), py::arg("pca_k"),
          py::arg("model"), py::arg("svr_options") = SvrFitOptions{});

    py::enum_<FeatureFamily>(m, "FeatureFamily")
        .value("Base", FeatureFamily::Base)
        .value("Derivative", FeatureFamily::Derivative)
        .value("Tbd", FeatureFamily::Tbd)
        .value("Adpd", FeatureFamily::Adpd);
    py::enum_<ModelFamily>(m, "ModelFamily")
        .value("Ridge", ModelFamily::Ridge)
        .value("Svr", ModelFamily::Svr);

    py::class_<SearchSpace>(m, "SearchSpace")
        .def(py::init<>())
        .def_readwrite("feature_family", &SearchSpace::feature_family)
        .def_readwrite("feature_params", &SearchSpace::feature_params)
        .def_readwrite("derivative_scale", &SearchSpace::derivative_scale)
        .def_readwrite("pca_ks", &SearchSpace::pca_ks)
        .def_readwrite("model_family", &SearchSpace::model_family)
        .def_readwrite("ridge_alphas", &SearchSpace::ridge_alphas)
        .def_readwrite("svr_cs", &SearchSpace::svr_cs)
        .def_readwrite("svr_kernels", &SearchSpace::svr_kernels)
        .def_readwrite("svr_epsilons", &SearchSpace::svr_epsilons)
        .def_property_readonly("size", &SearchSpace::size);
    m.def("default_search_space", &default_search_space, py::arg("feature"), py::arg("model"));

    py::class_<TrialResult>(m, "TrialResult")
        .def_readonly("feature", &TrialResult::feature)
        .def_readonly("pca_k", &TrialResult::pca_k)
        .def_readonly("model", &TrialResult::model)
        .def_property_readonly("status",
                               [](const TrialResult& t) {
                                   switch (t.status) {
                                       case TrialResult::Status::Ok: return "ok";
                                       case TrialResult::Status::Skipped: return "skipped";
                                       case TrialResult::Status::Error: return "error";
                                   }
                                   return "unknown";
                               })
        .def_readonly("message", &TrialResult::message)
        .def_readonly("metrics", &TrialResult::metrics);

    py::class_<SearchTrace>(m, "SearchTrace")
        .def_readonly("trials", &SearchTrace::trials)
        .def_readonly("best_index", &SearchTrace::best_index)
        .def_property_readonly("best",
                               [](const SearchTrace& t) { return t.best(); });
    m.def("grid_search", &grid_search, py::arg("dataset"), py::arg("space"),
          py::arg("preprocess") = PreprocessConfig{}, py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
}

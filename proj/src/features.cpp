#include "glucospec/features.hpp"

#include <cmath>

#include "glucospec/errors.hpp"
#include "glucospec/preprocess.hpp"

namespace glucospec {

FeatureMethod FeatureMethod::derivative(double scale) {
    FeatureMethod m;
    m.kind = Kind::Derivative;
    m.scale = scale;
    return m;
}

FeatureMethod FeatureMethod::tbd(double tau, double scale) {
    FeatureMethod m;
    m.kind = Kind::Tbd;
    m.tau = tau;
    m.scale = scale;
    return m;
}

FeatureMethod FeatureMethod::adpd(double alpha) {
    FeatureMethod m;
    m.kind = Kind::Adpd;
    m.alpha = alpha;
    return m;
}

void FeatureMethod::validate() const {
    if (kind == Kind::Tbd && !(tau > 0.0))
        throw ConfigError("TBD threshold tau must be positive, got " + std::to_string(tau));
    if ((kind == Kind::Tbd || kind == Kind::Derivative) && !(scale > 0.0))
        throw ConfigError("derivative scale must be positive, got " + std::to_string(scale));
    if (kind == Kind::Adpd && !(alpha >= 0.0))
        throw ConfigError("ADPD alpha must be non-negative, got " + std::to_string(alpha));
}

std::string FeatureMethod::name() const {
    switch (kind) {
        case Kind::Base: return "base";
        case Kind::Derivative: return "derivative";
        case Kind::Tbd: return "tbd";
        case Kind::Adpd: return "adpd";
    }
    return "unknown";
}

double FeatureMethod::parameter() const {
    if (kind == Kind::Tbd)
        return tau;
    if (kind == Kind::Adpd)
        return alpha;
    return 0.0;
}

namespace {

void check_shared_grid(const Spectrum& a, const Spectrum& d) {
    if (!(a.grid == d.grid))
        throw PipelineError("absorbance and derivative use different wavenumber grids");
}

}  // namespace

std::pair<Spectrum, TbdMask> tbd_transform(const Spectrum& absorbance,
                                           const Spectrum& derivative, double tau,
                                           double scale) {
    check_shared_grid(absorbance, derivative);
    if (!(tau > 0.0))
        throw ConfigError("TBD threshold tau must be positive");
    Spectrum out = absorbance;
    out.kind = SpectrumKind::Feature;
    TbdMask mask;
    mask.kept_absorbance.resize(absorbance.size());
    for (long i = 0; i < absorbance.size(); ++i) {
        const double s = scale * derivative.values[i];
        const bool keep = std::abs(s) < tau;
        mask.kept_absorbance[i] = keep;
        out.values[i] = keep ? absorbance.values[i] : s;
    }
    return {std::move(out), std::move(mask)};
}

Spectrum adpd_transform(const Spectrum& absorbance, const Spectrum& derivative, double alpha) {
    check_shared_grid(absorbance, derivative);
    if (!(alpha >= 0.0))
        throw ConfigError("ADPD alpha must be non-negative");
    Spectrum out = absorbance;
    out.kind = SpectrumKind::Feature;
    for (long i = 0; i < absorbance.size(); ++i) {
        const double zx = derivative.values[i] * absorbance.values[i];
        out.values[i] = absorbance.values[i] - alpha * zx;
    }
    return out;
}

FeatureMatrix apply_feature_method(const SpectralDataset& dataset, const FeatureMethod& method) {
    method.validate();
    const long n = dataset.n_samples();
    if (n == 0)
        throw PipelineError("cannot build features from an empty dataset");
    for (const auto& s : dataset.spectra)
        if (s.kind == SpectrumKind::Transmittance)
            throw PipelineError("feature methods expect preprocessed absorbance spectra");

    FeatureMatrix fm;
    fm.rows.resize(n, dataset.grid().count);
    fm.labels = dataset.labels;
    fm.sample_ids = dataset.sample_ids;
    for (long i = 0; i < n; ++i) {
        try {
            const Spectrum& a = dataset.spectra[i];
            switch (method.kind) {
                case FeatureMethod::Kind::Base:
                    fm.rows.row(i) = a.values.transpose();
                    break;
                case FeatureMethod::Kind::Derivative:
                    fm.rows.row(i) =
                        (method.scale * first_derivative(a).values).transpose();
                    break;
                case FeatureMethod::Kind::Tbd: {
                    const Spectrum d = first_derivative(a);
                    fm.rows.row(i) =
                        tbd_transform(a, d, method.tau, method.scale).first.values.transpose();
                    break;
                }
                case FeatureMethod::Kind::Adpd: {
                    const Spectrum d = first_derivative(a);
                    fm.rows.row(i) = adpd_transform(a, d, method.alpha).values.transpose();
                    break;
                }
            }
        } catch (const std::exception& e) {
            throw PipelineError("feature transform on sample " + dataset.sample_ids[i] + ": " +
                                e.what());
        }
    }
    return fm;
}

}  // namespace glucospec

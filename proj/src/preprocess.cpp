#include "glucospec/preprocess.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "glucospec/errors.hpp"

namespace glucospec {

void SavGolConfig::validate(long spectrum_length) const {
    if (window % 2 == 0)
        throw ConfigError("Savitzky-Golay window must be odd, got " + std::to_string(window));
    if (polyorder < 0)
        throw ConfigError("Savitzky-Golay polyorder must be non-negative");
    if (window < polyorder + 1)
        throw ConfigError("Savitzky-Golay window " + std::to_string(window) +
                          " shorter than polyorder + 1 = " + std::to_string(polyorder + 1));
    if (window > spectrum_length)
        throw ConfigError("Savitzky-Golay window " + std::to_string(window) +
                          " exceeds spectrum length " + std::to_string(spectrum_length));
}

Spectrum to_absorbance(const Spectrum& spectrum) {
    Spectrum out = spectrum;
    out.kind = SpectrumKind::Absorbance;
    for (long i = 0; i < spectrum.size(); ++i) {
        const double t = spectrum.values[i];
        if (!(t > 0.0) || t > 1.0)
            throw PipelineError("transmittance " + std::to_string(t) + " at index " +
                                std::to_string(i) + " outside (0, 1], cannot convert");
        out.values[i] = -std::log10(t);
    }
    return out;
}

Spectrum rubberband_correct(const Spectrum& spectrum) {
    const long n = spectrum.size();
    if (n < 3)
        throw PipelineError("rubber band correction needs at least 3 points");

    // Lower convex hull by monotone chain; x values are already sorted.
    const auto& v = spectrum.values;
    const auto& g = spectrum.grid;
    std::vector<long> hull;
    hull.reserve(64);
    for (long i = 0; i < n; ++i) {
        while (hull.size() >= 2) {
            const long a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            const double cross = (g.at(b) - g.at(a)) * (v[i] - v[a]) -
                                 (v[b] - v[a]) * (g.at(i) - g.at(a));
            if (cross <= 0.0)
                hull.pop_back();  // b is above or on segment a-i
            else
                break;
        }
        hull.push_back(i);
    }

    Spectrum out = spectrum;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const long a = hull[s], b = hull[s + 1];
        const double slope = (v[b] - v[a]) / (g.at(b) - g.at(a));
        out.values[a] = 0.0;
        for (long i = a + 1; i < b; ++i)
            out.values[i] = std::max(0.0, v[i] - (v[a] + slope * (g.at(i) - g.at(a))));
    }
    out.values[hull.back()] = 0.0;
    return out;
}

Spectrum minmax_normalize(const Spectrum& spectrum) {
    const double lo = spectrum.values.minCoeff();
    const double hi = spectrum.values.maxCoeff();
    if (!(hi > lo))
        throw PipelineError("min-max normalization of a constant spectrum (zero range)");
    Spectrum out = spectrum;
    out.values = (spectrum.values.array() - lo) / (hi - lo);
    return out;
}

Spectrum savgol_smooth(const Spectrum& spectrum, const SavGolConfig& config) {
    const long n = spectrum.size();
    config.validate(n);
    const long w = config.window;
    const long h = w / 2;
    const int p = config.polyorder;

    // Pseudo-inverse of the window Vandermonde: row m of P holds the weights
    // producing the fitted polynomial's m-th coefficient.
    Eigen::MatrixXd vand(w, p + 1);
    for (long j = 0; j < w; ++j) {
        const double x = static_cast<double>(j - h);
        double xm = 1.0;
        for (int m = 0; m <= p; ++m, xm *= x)
            vand(j, m) = xm;
    }
    const Eigen::MatrixXd pinv =
        vand.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(w, w));

    auto eval_weights = [&](double x) {
        Eigen::RowVectorXd t(p + 1);
        double xm = 1.0;
        for (int m = 0; m <= p; ++m, xm *= x)
            t[m] = xm;
        return Eigen::RowVectorXd(t * pinv);  // length-w dot weights
    };

    Spectrum out = spectrum;
    const Eigen::RowVectorXd center = pinv.row(0);
    for (long i = h; i < n - h; ++i)
        out.values[i] = center.dot(spectrum.values.segment(i - h, w));
    for (long e = 0; e < h; ++e) {
        out.values[e] = eval_weights(static_cast<double>(e - h)).dot(spectrum.values.head(w));
        out.values[n - 1 - e] =
            eval_weights(static_cast<double>(h - e)).dot(spectrum.values.tail(w));
    }
    return out;
}

Spectrum first_derivative(const Spectrum& spectrum) {
    const long n = spectrum.size();
    if (n < 3)
        throw PipelineError("first derivative needs at least 3 points");
    const double step = spectrum.grid.step;
    Spectrum out = spectrum;
    out.values[0] = (spectrum.values[1] - spectrum.values[0]) / step;
    for (long i = 1; i < n - 1; ++i)
        out.values[i] = (spectrum.values[i + 1] - spectrum.values[i - 1]) / (2.0 * step);
    out.values[n - 1] = (spectrum.values[n - 1] - spectrum.values[n - 2]) / step;
    return out;
}

SpectralDataset preprocess_chain(const SpectralDataset& dataset, const PreprocessConfig& config) {
    dataset.validate();
    SpectralDataset out = dataset;
    for (long i = 0; i < dataset.n_samples(); ++i) {
        try {
            Spectrum s = to_absorbance(dataset.spectra[i]);
            if (config.apply_rubberband)
                s = rubberband_correct(s);
            if (config.apply_minmax)
                s = minmax_normalize(s);
            out.spectra[i] = savgol_smooth(s, config.savgol);
        } catch (const std::exception& e) {
            throw PipelineError("preprocessing sample " + dataset.sample_ids[i] + ": " +
                                e.what());
        }
    }
    return out;
}

}  // namespace glucospec

#include "glucospec/spectrum.hpp"

#include <cmath>
#include <unordered_set>

#include "glucospec/errors.hpp"

namespace glucospec {

void WavenumberGrid::validate() const {
    if (!(step > 0.0))
        throw ConfigError("wavenumber grid step must be positive, got " + std::to_string(step));
    if (count < 3)
        throw ConfigError("wavenumber grid needs at least 3 points, got " + std::to_string(count));
}

const char* to_string(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::Transmittance: return "transmittance";
        case SpectrumKind::Absorbance: return "absorbance";
        case SpectrumKind::Feature: return "feature";
    }
    return "unknown";
}

void Spectrum::validate(const std::string& context) const {
    const std::string where = context.empty() ? std::string() : context + ": ";
    grid.validate();
    if (values.size() != grid.count)
        throw PipelineError(where + "spectrum has " + std::to_string(values.size()) +
                            " values but grid has " + std::to_string(grid.count) + " points");
    for (long i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (!std::isfinite(v))
            throw PipelineError(where + "non-finite value at grid index " + std::to_string(i));
        if (kind == SpectrumKind::Transmittance && (v <= 0.0 || v > 1.0))
            throw PipelineError(where + "transmittance " + std::to_string(v) +
                                " at wavenumber " + std::to_string(grid.at(i)) +
                                " outside (0, 1]");
    }
}

const WavenumberGrid& SpectralDataset::grid() const {
    if (spectra.empty())
        throw PipelineError("dataset is empty, no grid available");
    return spectra.front().grid;
}

void SpectralDataset::validate() const {
    const long n = n_samples();
    if (n == 0)
        throw PipelineError("dataset must contain at least one sample");
    if (labels.size() != n || static_cast<long>(sample_ids.size()) != n)
        throw PipelineError("dataset size mismatch: " + std::to_string(n) + " spectra, " +
                            std::to_string(labels.size()) + " labels, " +
                            std::to_string(sample_ids.size()) + " sample ids");
    std::unordered_set<std::string> seen;
    for (long i = 0; i < n; ++i) {
        if (!(spectra[i].grid == spectra[0].grid))
            throw PipelineError("sample " + sample_ids[i] + " uses a different wavenumber grid");
        if (!(labels[i] > 0.0) || !std::isfinite(labels[i]))
            throw PipelineError("sample " + sample_ids[i] + " has non-positive glucose label " +
                                std::to_string(labels[i]));
        if (!seen.insert(sample_ids[i]).second)
            throw PipelineError("duplicate sample id " + sample_ids[i]);
        spectra[i].validate(sample_ids[i]);
    }
}

}  // namespace glucospec

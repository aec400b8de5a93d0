#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace glucospec {

/// Uniform, strictly increasing wavenumber axis in cm^-1.
struct WavenumberGrid {
    double start = 400.0;
    double step = 1.0;
    long count = 3601;  // default spans 400-4000 cm^-1

    double at(long i) const { return start + step * static_cast<double>(i); }
    double last() const { return at(count - 1); }

    bool operator==(const WavenumberGrid& o) const {
        return start == o.start && step == o.step && count == o.count;
    }

    /// Throws ConfigError unless step > 0 and count >= 3.
    void validate() const;
};

enum class SpectrumKind { Transmittance, Absorbance, Feature };

const char* to_string(SpectrumKind kind);

/// One sample's signal over a wavenumber grid.
struct Spectrum {
    WavenumberGrid grid;
    Eigen::VectorXd values;
    SpectrumKind kind = SpectrumKind::Transmittance;

    long size() const { return values.size(); }

    /// Checks length, finiteness and - for transmittance - the (0, 1] range.
    /// `context` prefixes error messages (typically the sample id).
    void validate(const std::string& context = {}) const;
};

/// Aligned spectra with glucose labels in mg/dl.
struct SpectralDataset {
    std::vector<Spectrum> spectra;
    Eigen::VectorXd labels;
    std::vector<std::string> sample_ids;

    long n_samples() const { return static_cast<long>(spectra.size()); }
    const WavenumberGrid& grid() const;

    /// Full invariant check: matching lengths, shared grid, positive labels,
    /// unique ids, per-spectrum validity.
    void validate() const;
};

}  // namespace glucospec

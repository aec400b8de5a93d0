#pragma once

#include <cstdint>
#include <vector>

#include "glucospec/spectrum.hpp"

namespace glucospec {

/// Seeded Beer-Lambert generator standing in for a lab dataset.
///
/// Per sample, total absorbance is
///   A(w) = shared_baseline(w) + sample_drift(w)
///        + sum_j band_gains[j] * c * gauss(w; band_centers[j], band_widths[j])
///        + noise,
/// with glucose c drawn uniformly from glucose_range and transmittance
/// T = 10^(-A). The shared baseline is a low-order polynomial scaled by
/// baseline_amplitude and drawn once per dataset; per-sample drift and point
/// noise both scale with noise_sd, so noise_sd = 0 leaves the glucose signal
/// as the only sample-to-sample variation.
///
/// RNG is pinned for portable fixtures: mt19937-64, uniforms via the 53-bit
/// mantissa mapping, normals via the basic Box-Muller transform (two uniforms
/// per draw). Draw order: labels, shared baseline, then per sample drift
/// coefficients followed by per-point noise.
struct SynthesisConfig {
    long n_samples = 46;
    double glucose_low = 72.0;   // mg/dl
    double glucose_high = 125.0;
    std::uint64_t seed = 42;
    double noise_sd = 0.002;            // absorbance units
    double baseline_amplitude = 0.05;   // absorbance units
    std::vector<double> band_centers = {1035.0, 1080.0, 1150.0, 3300.0};  // cm^-1
    std::vector<double> band_widths = {18.0, 22.0, 30.0, 120.0};          // cm^-1
    std::vector<double> band_gains = {1.6e-3, 1.2e-3, 0.9e-3, 5e-4};      // A per mg/dl
    WavenumberGrid grid;  // defaults to 400-4000 cm^-1 step 1

    void validate() const;
};

/// Deterministic for a given config (including seed). Throws PipelineError
/// if the configured gains push any transmittance out of (0, 1].
SpectralDataset synthesize(const SynthesisConfig& config);

}  // namespace glucospec

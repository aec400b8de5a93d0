#pragma once

#include "glucospec/spectrum.hpp"

namespace glucospec {

/// Savitzky-Golay smoothing parameters. The window must be odd, at least
/// polyorder + 1, and no longer than the spectrum.
struct SavGolConfig {
    long window = 101;  // nearest valid odd width to the nominal 100
    int polyorder = 2;

    void validate(long spectrum_length) const;
};

struct PreprocessConfig {
    SavGolConfig savgol;
    bool apply_rubberband = true;
    bool apply_minmax = true;
};

/// A = -log10(T). Rejects T outside (0, 1] with the offending index.
Spectrum to_absorbance(const Spectrum& spectrum);

/// Subtracts the piecewise-linear lower convex hull baseline. Output is
/// non-negative, exactly zero on hull vertices, and idempotent.
Spectrum rubberband_correct(const Spectrum& spectrum);

/// (v - min) / (max - min); errors on constant input.
Spectrum minmax_normalize(const Spectrum& spectrum);

/// Least-squares polynomial smoothing; edge points come from evaluating the
/// first/last window fit at the off-center positions, so length is preserved.
Spectrum savgol_smooth(const Spectrum& spectrum, const SavGolConfig& config);

/// Central differences on the interior, one-sided at the endpoints,
/// in value units per cm^-1.
Spectrum first_derivative(const Spectrum& spectrum);

/// The full chain per sample: absorbance -> rubber band -> min-max ->
/// Savitzky-Golay, with the two middle steps gated by the config flags.
/// Labels and ids pass through untouched; errors carry the sample id.
SpectralDataset preprocess_chain(const SpectralDataset& dataset, const PreprocessConfig& config);

}  // namespace glucospec

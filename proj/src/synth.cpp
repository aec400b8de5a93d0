#include "glucospec/synth.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "glucospec/errors.hpp"

namespace glucospec {

namespace {

// Ratio between per-sample smooth drift and per-point noise amplitudes.
constexpr double kDriftPerNoise = 10.0;

struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    double uniform01() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Basic Box-Muller; consumes exactly two uniforms per draw so the
    // stream layout stays pinned.
    double normal() {
        double u1 = uniform01();
        while (u1 <= 0.0)
            u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
};

double quadratic(double c0, double c1, double c2, double u) {
    return c0 + u * (c1 + u * c2);
}

}  // namespace

void SynthesisConfig::validate() const {
    grid.validate();
    if (n_samples < 2)
        throw ConfigError("synthesis needs n_samples >= 2, got " + std::to_string(n_samples));
    if (!(glucose_low < glucose_high))
        throw ConfigError("glucose range low must be below high");
    if (!(glucose_low > 0.0))
        throw ConfigError("glucose range must be positive");
    if (noise_sd < 0.0)
        throw ConfigError("noise_sd must be non-negative");
    if (baseline_amplitude < 0.0)
        throw ConfigError("baseline_amplitude must be non-negative");
    if (band_centers.size() != band_widths.size() || band_centers.size() != band_gains.size())
        throw ConfigError("band_centers, band_widths and band_gains must have equal length");
    for (std::size_t j = 0; j < band_centers.size(); ++j) {
        if (!(band_widths[j] > 0.0))
            throw ConfigError("band width " + std::to_string(j) + " must be positive");
        if (!(band_gains[j] > 0.0))
            throw ConfigError("band gain " + std::to_string(j) + " must be positive");
    }
}

SpectralDataset synthesize(const SynthesisConfig& config) {
    config.validate();
    Rng rng(config.seed);
    const long n = config.n_samples;
    const long m = config.grid.count;

    Eigen::VectorXd labels(n);
    for (long i = 0; i < n; ++i)
        labels[i] = rng.uniform(config.glucose_low, config.glucose_high);

    // Shared instrument baseline: non-negative quadratic in u = (w - w0)/span.
    const double b0 = rng.uniform(0.8, 1.2);
    const double b1 = rng.uniform(-0.2, 0.2);
    const double b2 = rng.uniform(-0.2, 0.2);

    const double span = config.grid.last() - config.grid.start;
    Eigen::VectorXd u(m), shared(m);
    for (long r = 0; r < m; ++r) {
        u[r] = (config.grid.at(r) - config.grid.start) / span;
        shared[r] = config.baseline_amplitude * quadratic(b0, b1, b2, u[r]);
    }

    // Band shapes depend only on the grid; glucose scales them per sample.
    Eigen::VectorXd band_shape = Eigen::VectorXd::Zero(m);
    for (std::size_t j = 0; j < config.band_centers.size(); ++j) {
        const double c = config.band_centers[j];
        const double w2 = 2.0 * config.band_widths[j] * config.band_widths[j];
        for (long r = 0; r < m; ++r) {
            const double d = config.grid.at(r) - c;
            band_shape[r] += config.band_gains[j] * std::exp(-d * d / w2);
        }
    }

    SpectralDataset ds;
    ds.labels = labels;
    const int id_width = std::max<int>(3, static_cast<int>(std::to_string(n).size()));
    const double drift_amp = kDriftPerNoise * config.noise_sd;
    for (long i = 0; i < n; ++i) {
        const double d0 = rng.uniform(0.5, 1.0);
        const double d1 = rng.uniform(-0.25, 0.25);
        const double d2 = rng.uniform(-0.25, 0.25);
        Spectrum s;
        s.grid = config.grid;
        s.kind = SpectrumKind::Transmittance;
        s.values.resize(m);
        for (long r = 0; r < m; ++r) {
            double a = shared[r] + drift_amp * quadratic(d0, d1, d2, u[r]) +
                       band_shape[r] * labels[i];
            if (config.noise_sd > 0.0)
                a += config.noise_sd * rng.normal();
            else
                rng.normal();  // keep the stream aligned across noise settings
            if (a < 0.0)
                throw PipelineError(
                    "synthesis produced transmittance > 1 (absorbance " + std::to_string(a) +
                    ") for sample " + std::to_string(i) + " at wavenumber " +
                    std::to_string(config.grid.at(r)) +
                    "; noise or drift outweighs the baseline floor");
            s.values[r] = std::pow(10.0, -a);
        }
        char id[32];
        std::snprintf(id, sizeof(id), "sample_%0*ld", id_width, i + 1);
        ds.sample_ids.emplace_back(id);
        ds.spectra.push_back(std::move(s));
    }
    ds.validate();
    return ds;
}

}  // namespace glucospec

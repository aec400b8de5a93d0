#pragma once

#include <string>

#include "glucospec/spectrum.hpp"

namespace glucospec {

/// Reads the spectra/labels CSV pair.
///
/// Spectra file: header `wavenumber,<id_1>,<id_2>,...`, one row per grid
/// point. Labels file: header `sample_id,glucose_mgdl`. UTF-8, LF or CRLF.
/// Spectra are tagged Transmittance and validated to (0, 1]; the wavenumber
/// column must form a uniform strictly increasing grid.
SpectralDataset ingest_csv(const std::string& spectra_path, const std::string& labels_path);

/// Writes the dataset back in the same pair format, LF line endings,
/// 12 significant digits. Round-trips through ingest_csv to < 1e-12 relative.
void write_csv(const SpectralDataset& dataset, const std::string& spectra_path,
               const std::string& labels_path);

/// The exact bytes write_csv emits, for callers that want to stage them.
std::string spectra_to_csv(const SpectralDataset& dataset);
std::string labels_to_csv(const SpectralDataset& dataset);

/// Formats one double the way the CSV writers do (12 significant digits).
std::string format_csv_value(double v);

}  // namespace glucospec

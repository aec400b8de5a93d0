#include "glucospec/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "glucospec/errors.hpp"
#include "glucospec/fsutil.hpp"

namespace glucospec {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();  // CRLF input
        lines.push_back(line);
    }
    if (!lines.empty() && lines.front().size() >= 3 &&
        static_cast<unsigned char>(lines.front()[0]) == 0xEF &&
        static_cast<unsigned char>(lines.front()[1]) == 0xBB &&
        static_cast<unsigned char>(lines.front()[2]) == 0xBF) {
        lines.front().erase(0, 3);  // UTF-8 BOM
    }
    while (!lines.empty() && lines.back().empty())
        lines.pop_back();
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double parse_double(const std::string& cell, const std::string& where) {
    const char* s = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw IoError(where + ": cannot parse '" + cell + "' as a number");
    if (!std::isfinite(v))
        throw IoError(where + ": non-finite value '" + cell + "'");
    return v;
}

std::string cell_location(const std::string& path, std::size_t row, std::size_t col) {
    return path + " row " + std::to_string(row + 1) + " column " + std::to_string(col + 1);
}

}  // namespace

std::string format_csv_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

SpectralDataset ingest_csv(const std::string& spectra_path, const std::string& labels_path) {
    const auto spec_lines = read_lines(spectra_path);
    if (spec_lines.size() < 4)
        throw IoError(spectra_path + ": expected a header plus at least 3 grid rows");

    const auto header = split_csv(spec_lines[0]);
    if (header.size() < 2 || header[0] != "wavenumber")
        throw IoError(spectra_path + ": malformed header, expected 'wavenumber,<sample ids...>'");
    std::vector<std::string> ids(header.begin() + 1, header.end());
    for (const auto& id : ids)
        if (id.empty())
            throw IoError(spectra_path + ": empty sample id in header");

    const long n_points = static_cast<long>(spec_lines.size()) - 1;
    const long n_samples = static_cast<long>(ids.size());
    std::vector<double> wavenumbers(n_points);
    Eigen::MatrixXd values(n_points, n_samples);

    for (long r = 0; r < n_points; ++r) {
        const auto cells = split_csv(spec_lines[r + 1]);
        if (static_cast<long>(cells.size()) != n_samples + 1)
            throw IoError(spectra_path + " row " + std::to_string(r + 2) + ": expected " +
                          std::to_string(n_samples + 1) + " cells, got " +
                          std::to_string(cells.size()));
        wavenumbers[r] = parse_double(cells[0], cell_location(spectra_path, r + 1, 0));
        for (long c = 0; c < n_samples; ++c) {
            const double v =
                parse_double(cells[c + 1], cell_location(spectra_path, r + 1, c + 1));
            if (v <= 0.0 || v > 1.0)
                throw IoError(cell_location(spectra_path, r + 1, c + 1) + " (sample " +
                              ids[c] + "): transmittance " + format_csv_value(v) +
                              " outside (0, 1]");
            values(r, c) = v;
        }
    }

    // Grid from endpoints; every interior point must agree with the uniform
    // spacing to 1e-6 relative (covers the 12-digit writer granularity).
    const double step = (wavenumbers[n_points - 1] - wavenumbers[0]) /
                        static_cast<double>(n_points - 1);
    if (!(step > 0.0))
        throw IoError(spectra_path + ": wavenumber column is not strictly increasing");
    for (long r = 1; r < n_points; ++r) {
        const double expect = wavenumbers[0] + step * static_cast<double>(r);
        if (std::abs(wavenumbers[r] - expect) > 1e-6 * step)
            throw IoError(spectra_path + " row " + std::to_string(r + 2) +
                          ": wavenumber column is not a uniform increasing grid near " +
                          format_csv_value(wavenumbers[r]));
    }

    const auto label_lines = read_lines(labels_path);
    if (label_lines.empty() || split_csv(label_lines[0]) !=
                                   std::vector<std::string>{"sample_id", "glucose_mgdl"})
        throw IoError(labels_path + ": malformed header, expected 'sample_id,glucose_mgdl'");
    std::unordered_map<std::string, double> label_by_id;
    for (std::size_t r = 1; r < label_lines.size(); ++r) {
        const auto cells = split_csv(label_lines[r]);
        if (cells.size() != 2)
            throw IoError(labels_path + " row " + std::to_string(r + 1) + ": expected 2 cells");
        if (!label_by_id.emplace(cells[0],
                                 parse_double(cells[1], cell_location(labels_path, r, 1)))
                 .second)
            throw IoError(labels_path + ": duplicate label for sample " + cells[0]);
    }
    if (static_cast<long>(label_by_id.size()) != n_samples)
        throw IoError(labels_path + ": " + std::to_string(label_by_id.size()) +
                      " labels for " + std::to_string(n_samples) + " sample columns");

    SpectralDataset ds;
    WavenumberGrid grid{wavenumbers[0], step, n_points};
    ds.labels.resize(n_samples);
    for (long c = 0; c < n_samples; ++c) {
        const auto it = label_by_id.find(ids[c]);
        if (it == label_by_id.end())
            throw IoError(labels_path + ": missing label for sample " + ids[c]);
        ds.labels[c] = it->second;
        ds.spectra.push_back(Spectrum{grid, values.col(c), SpectrumKind::Transmittance});
        ds.sample_ids.push_back(ids[c]);
    }
    ds.validate();
    return ds;
}

std::string spectra_to_csv(const SpectralDataset& dataset) {
    dataset.validate();
    std::ostringstream out;
    out << "wavenumber";
    for (const auto& id : dataset.sample_ids)
        out << ',' << id;
    out << '\n';
    const auto& grid = dataset.grid();
    for (long r = 0; r < grid.count; ++r) {
        out << format_csv_value(grid.at(r));
        for (const auto& s : dataset.spectra)
            out << ',' << format_csv_value(s.values[r]);
        out << '\n';
    }
    return out.str();
}

std::string labels_to_csv(const SpectralDataset& dataset) {
    dataset.validate();
    std::ostringstream out;
    out << "sample_id,glucose_mgdl\n";
    for (long i = 0; i < dataset.n_samples(); ++i)
        out << dataset.sample_ids[i] << ',' << format_csv_value(dataset.labels[i]) << '\n';
    return out.str();
}

void write_csv(const SpectralDataset& dataset, const std::string& spectra_path,
               const std::string& labels_path) {
    const std::string spectra = spectra_to_csv(dataset);
    const std::string labels = labels_to_csv(dataset);
    atomic_write_file(spectra_path, spectra);
    atomic_write_file(labels_path, labels);
}

}  // namespace glucospec

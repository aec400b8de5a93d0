#pragma once

#include <array>
#include <string>
#include <vector>

#include "glucospec/metrics.hpp"

namespace glucospec {

enum class Zone { A, B, C, D, E };

char zone_letter(Zone z);

enum class GridKind { Clarke, ParkesType1, ParkesType2 };

const char* to_string(GridKind kind);

/// Clarke 1987 zone for one (reference, predicted) pair in mg/dl.
/// Requires both values positive. Boundary ties resolve to the better
/// (alphabetically earlier) zone.
Zone clarke_zone(double reference, double predicted);

/// Parkes consensus grid zone (type 1 or type 2 diabetes variant) by
/// point-in-polygon against the digitized zone vertex lists. Requires both
/// values inside the published [0, 550] canvas. Boundary ties resolve to
/// the better zone; the type 2 grid has no E zone.
Zone parkes_zone(GridKind grid, double reference, double predicted);

struct ParkesPolygon {
    Zone zone;
    std::vector<std::array<double, 2>> vertices;  // (reference, predicted)
};

/// The digitized zone polygons for one Parkes grid variant, in
/// classification order (A first). Exposed so the shipped data files and
/// plot renderers stay in sync with the classifier.
const std::vector<ParkesPolygon>& parkes_polygons(GridKind grid);

struct ErrorGridReport {
    GridKind grid_kind = GridKind::Clarke;
    std::array<long, 5> zone_counts{};      // indexed by Zone
    std::vector<Zone> per_point_zones;

    long outside_zone_a() const;
};

ErrorGridReport error_grid_report(GridKind grid_kind,
                                  const std::vector<CvPrediction>& predictions);

}  // namespace glucospec

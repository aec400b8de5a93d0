#include "glucospec/error_grid.hpp"

#include <cmath>

#include "glucospec/errors.hpp"

namespace glucospec {

char zone_letter(Zone z) {
    return static_cast<char>('A' + static_cast<int>(z));
}

const char* to_string(GridKind kind) {
    switch (kind) {
        case GridKind::Clarke: return "clarke";
        case GridKind::ParkesType1: return "parkes_type1";
        case GridKind::ParkesType2: return "parkes_type2";
    }
    return "unknown";
}

// Clarke zones as explicit inequalities on (r, p) = (reference, predicted):
//   A : p within 20% of r (0.8 r <= p <= 1.2 r), or both at most 70
//   E : r < 70 and p > 180 (upper left), or r > 180 and p < 70 (lower right)
//   C : upper arm p > r + 110 for 70 <= r < 290;
//       lower arm p < 1.4 r - 182 for 130 <= r <= 180
//   D : left box r < 70, 70 <= p <= 180 above the A band;
//       right box r > 240, 70 <= p < 180
//   B : everything else
// Strict/inclusive bounds are chosen so every boundary point lands in the
// better of its adjacent zones; after the inclusive A test the remaining
// regions are disjoint.
Zone clarke_zone(double reference, double predicted) {
    const double r = reference, p = predicted;
    if (!(r > 0.0) || !(p > 0.0) || !std::isfinite(r) || !std::isfinite(p))
        throw PipelineError("Clarke grid needs positive finite values, got reference " +
                            std::to_string(r) + ", predicted " + std::to_string(p));

    if ((r <= 70.0 && p <= 70.0) || (p >= 0.8 * r && p <= 1.2 * r))
        return Zone::A;
    if ((r >= 70.0 && r < 290.0 && p > r + 110.0) ||
        (r >= 130.0 && r <= 180.0 && p < 1.4 * r - 182.0))
        return Zone::C;
    if ((r < 70.0 && p >= 70.0 && p <= 180.0 && p >= 1.2 * r) ||
        (r > 240.0 && p >= 70.0 && p < 180.0))
        return Zone::D;
    if ((r < 70.0 && p > 180.0) || (r > 180.0 && p < 70.0))
        return Zone::E;
    return Zone::B;
}

namespace {

// Parkes consensus error grid zone polygons, digitized from the published
// boundary corner tables. Coordinates are (reference, predicted) on the
// [0, 550] canvas; polygons are listed best zone first so the inclusive
// containment test resolves boundary ties toward the better zone.
const std::vector<ParkesPolygon>& type1_polygons() {
    static const std::vector<ParkesPolygon> polys = {
        {Zone::A, {{0, 0}, {50, 0}, {50, 30}, {170, 145}, {385, 300}, {550, 450},
                   {550, 550}, {430, 550}, {280, 380}, {140, 170}, {30, 50}, {0, 50}}},
        {Zone::B, {{0, 50}, {30, 50}, {140, 170}, {280, 380}, {430, 550}, {260, 550},
                   {70, 110}, {50, 80}, {30, 60}, {0, 60}}},
        {Zone::B, {{50, 0}, {120, 0}, {120, 30}, {260, 130}, {550, 250}, {550, 450},
                   {385, 300}, {170, 145}, {50, 30}}},
        {Zone::C, {{0, 60}, {30, 60}, {50, 80}, {70, 110}, {260, 550}, {125, 550},
                   {80, 215}, {50, 125}, {25, 100}, {0, 100}}},
        {Zone::C, {{120, 0}, {250, 0}, {250, 40}, {550, 150}, {550, 250}, {260, 130},
                   {120, 30}}},
        {Zone::D, {{0, 100}, {25, 100}, {50, 125}, {80, 215}, {125, 550}, {50, 550},
                   {35, 155}, {0, 150}}},
        {Zone::D, {{250, 0}, {550, 0}, {550, 150}, {250, 40}}},
        {Zone::E, {{0, 150}, {35, 155}, {50, 550}, {0, 550}}},
    };
    return polys;
}

// The type 2 variant has no E zone; everything above the C/D boundary is D.
const std::vector<ParkesPolygon>& type2_polygons() {
    static const std::vector<ParkesPolygon> polys = {
        {Zone::A, {{0, 0}, {50, 0}, {50, 30}, {90, 80}, {330, 230}, {550, 450},
                   {550, 550}, {440, 550}, {230, 330}, {30, 50}, {0, 50}}},
        {Zone::B, {{0, 50}, {30, 50}, {230, 330}, {440, 550}, {280, 550}, {30, 60},
                   {0, 60}}},
        {Zone::B, {{50, 0}, {90, 0}, {260, 130}, {550, 250}, {550, 450}, {330, 230},
                   {90, 80}, {50, 30}}},
        {Zone::C, {{0, 60}, {30, 60}, {280, 550}, {125, 550}, {35, 90}, {25, 80},
                   {0, 80}}},
        {Zone::C, {{90, 0}, {250, 0}, {250, 40}, {410, 110}, {550, 160}, {550, 250},
                   {260, 130}}},
        {Zone::D, {{0, 80}, {25, 80}, {35, 90}, {125, 550}, {0, 550}}},
        {Zone::D, {{250, 0}, {550, 0}, {550, 160}, {410, 110}, {250, 40}}},
    };
    return polys;
}

bool on_segment(const std::array<double, 2>& a, const std::array<double, 2>& b, double x,
                double y) {
    const double cross = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
    if (cross != 0.0)
        return false;
    return x >= std::min(a[0], b[0]) && x <= std::max(a[0], b[0]) &&
           y >= std::min(a[1], b[1]) && y <= std::max(a[1], b[1]);
}

// Even-odd rule with points on an edge counting as inside.
bool contains(const ParkesPolygon& poly, double x, double y) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if (on_segment(v[j], v[i], x, y))
            return true;
        if ((v[i][1] > y) != (v[j][1] > y)) {
            const double x_cross =
                v[j][0] + (y - v[j][1]) * (v[i][0] - v[j][0]) / (v[i][1] - v[j][1]);
            if (x < x_cross)
                inside = !inside;
        }
    }
    return inside;
}

}  // namespace

const std::vector<ParkesPolygon>& parkes_polygons(GridKind grid) {
    switch (grid) {
        case GridKind::ParkesType1: return type1_polygons();
        case GridKind::ParkesType2: return type2_polygons();
        case GridKind::Clarke: break;
    }
    throw PipelineError("parkes_polygons called for a non-Parkes grid");
}

Zone parkes_zone(GridKind grid, double reference, double predicted) {
    if (grid != GridKind::ParkesType1 && grid != GridKind::ParkesType2)
        throw PipelineError("parkes_zone needs a Parkes grid kind");
    if (!(reference >= 0.0 && reference <= 550.0 && predicted >= 0.0 && predicted <= 550.0) ||
        !std::isfinite(reference) || !std::isfinite(predicted))
        throw PipelineError("point (" + std::to_string(reference) + ", " +
                            std::to_string(predicted) + ") outside the Parkes [0, 550] canvas");
    for (const auto& poly : parkes_polygons(grid))
        if (contains(poly, reference, predicted))
            return poly.zone;
    throw PipelineError("Parkes grid gap at (" + std::to_string(reference) + ", " +
                        std::to_string(predicted) + "); zone polygons should partition the canvas");
}

long ErrorGridReport::outside_zone_a() const {
    long n = 0;
    for (std::size_t z = 1; z < zone_counts.size(); ++z)
        n += zone_counts[z];
    return n;
}

ErrorGridReport error_grid_report(GridKind grid_kind,
                                  const std::vector<CvPrediction>& predictions) {
    if (predictions.empty())
        throw PipelineError("error grid report needs at least one prediction");
    ErrorGridReport rep;
    rep.grid_kind = grid_kind;
    rep.per_point_zones.reserve(predictions.size());
    for (const auto& p : predictions) {
        const Zone z = grid_kind == GridKind::Clarke
                           ? clarke_zone(p.reference, p.predicted)
                           : parkes_zone(grid_kind, p.reference, p.predicted);
        rep.per_point_zones.push_back(z);
        ++rep.zone_counts[static_cast<std::size_t>(z)];
    }
    return rep;
}

}  // namespace glucospec

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "escset/dynamics.hpp"
#include "escset/exact.hpp"
#include "escset/maps2d.hpp"
#include "escset/pl_map.hpp"

namespace escset {

/// Every name resolve_map2d accepts: the built-in maps, then the demo regions.
std::vector<std::string> planar_map_names();
/// Built-in map by name, or the constructed map of a demo region given as
/// "<region>" or "thm11-<region>". Throws ContractError for unknown names.
Map2D resolve_map2d(const std::string& name);

/**
 * Per-cell verdicts over a window. Row 0 is the top row (largest y). Each
 * cell is classified at its representative point: a feature point of the map
 * inside the cell when there is one, otherwise the cell center.
 */
struct Raster {
    Window window{};
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::vector<VerdictKind> cells;
    std::vector<Point2> points;
    std::string map_id;
    ClassifyConfig cfg;
    /// Neighborhood used by label_components.
    int connectivity = 4;

    std::size_t index(std::size_t col, std::size_t row) const { return row * cols + col; }
    VerdictKind at(std::size_t col, std::size_t row) const { return cells[index(col, row)]; }
    Point2 point(std::size_t col, std::size_t row) const { return points[index(col, row)]; }
    Point2 cell_center(std::size_t col, std::size_t row) const;
    std::size_t count(VerdictKind kind) const;
    std::size_t undetermined() const { return count(VerdictKind::Undetermined); }
};

/// `threads` = 0 uses the hardware concurrency. The result does not depend on it.
Raster raster_classify(const Map2D& map, const Window& window, std::size_t cols, std::size_t rows,
                       const ClassifyConfig& cfg, unsigned threads = 0);
Raster raster_classify(const std::string& map_id, const Window& window, std::size_t cols, std::size_t rows,
                       const ClassifyConfig& cfg, unsigned threads = 0);

/// Synthetic raster: cells whose center satisfies `escaping` are marked
/// EscapingToBudget, the rest EventuallyFixed.
Raster raster_from_predicate(const Window& window, std::size_t cols, std::size_t rows,
                             const std::function<bool(const Point2&)>& escaping, std::string id);

/// The union of discs D((n, 0), 1/4), n >= 1, as a synthetic raster.
Raster disc_chain_raster(const Window& window, std::size_t cols, std::size_t rows);
Window disc_chain_window();

struct ComponentStats {
    std::size_t id = 0;
    std::size_t cells = 0;
    double min_norm = 0.0;
    double max_norm = 0.0;
    bool touches_edge = false;
};

/// Component label per cell (0 = not escaping, k >= 1 = component k of the result).
struct ComponentLabels {
    std::vector<std::size_t> labels;
    std::vector<ComponentStats> components;
};

/// 4-connected components of the escaping cells, ordered by min_norm
/// (ties by first cell in row-major order) and numbered from 1 in that order.
ComponentLabels label_cells(const Raster& r);
std::vector<ComponentStats> label_components(const Raster& r);

enum class NecessaryVerdict { Consistent, ViolatedInWindow, Vacuous };
const char* to_string(NecessaryVerdict v);

struct NecessaryConditionReport {
    NecessaryVerdict verdict = NecessaryVerdict::Vacuous;
    double r = 0.0;
    /// Components with min_norm <= r, sorted by max_norm.
    std::vector<ComponentStats> near_origin;
    /// Some component with min_norm <= r reaches the window edge.
    bool reaches_edge = false;
    std::string note;
};

NecessaryConditionReport check_necessary_condition(const std::vector<ComponentStats>& components, double r);

struct CensusReport {
    ExactScalar center;
    ExactScalar radius;
    std::size_t samples = 0;
    std::size_t escaping = 0;
    std::size_t fixed = 0;
    std::size_t other = 0;
    bool center_escapes = false;
    std::size_t depth = 0;
    /// Distinct escaping witnesses from the family seeded in the neighborhood.
    std::vector<ExactScalar> witnesses;
};

/// Samples [center - radius, center + radius] evenly (a single sample when
/// radius = 0) and, when the center escapes, generates an escaping family of
/// the given depth inside the neighborhood.
CensusReport neighborhood_census(const PLMap1D& map, const ExactScalar& center, const ExactScalar& radius,
                                 std::size_t samples, std::size_t budget, std::size_t depth = 3);

/// A point on a branch boundary with the direction that crosses it.
struct Seam {
    std::string label;
    Point2 base;
    Point2 normal;
    /// The gap shrinks only logarithmically in delta here (the y -> 0 seam of
    /// the snake map), so the probe uses a much longer delta schedule.
    bool slow = false;
};

struct SeamResult {
    Seam seam;
    std::vector<double> deltas;
    /// |f(base + delta n) - f(base - delta n)| per delta.
    std::vector<double> gaps;
    /// max gap / (2 delta).
    double fitted_c = 0.0;
    /// Smooth seams: last gap <= 1e-4 (1 + first gap). Slow seams: last gap <= first gap / 20.
    bool converging = false;
};

/// Branch boundaries of the named built-in map.
std::vector<Seam> standard_seams(const std::string& map_name);
SeamResult probe_seam(const Map2D& map, const Seam& seam);

void write_pgm(const Raster& r, std::ostream& out);
void write_components_csv(const std::vector<ComponentStats>& components, std::ostream& out);

} // namespace escset

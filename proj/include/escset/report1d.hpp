#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "escset/dynamics.hpp"
#include "escset/pl_map.hpp"

namespace escset {

struct SampleVerdict {
    ExactScalar x;
    VerdictKind kind = VerdictKind::Undetermined;
};

/// Maximal run of consecutive non-escaping samples, indices inclusive.
struct NonEscapingRun {
    std::size_t first = 0;
    std::size_t last = 0;
    /// Verdicts of the samples just outside the run; absent at the window ends.
    std::optional<VerdictKind> left_flank;
    std::optional<VerdictKind> right_flank;
};

struct ClosednessReport {
    std::string map_id;
    RatInterval window{ExactScalar(0), ExactScalar(0)};
    std::size_t budget = 0;
    std::vector<SampleVerdict> samples;
    std::vector<NonEscapingRun> runs;
    std::size_t escaping = 0;
    std::size_t fixed = 0;
    std::size_t other = 0;
    /// True when every non-escaping sample carries an exact fixed-point certificate.
    bool non_escaping_all_fixed = true;
    static constexpr const char* kind_label = "empirical sample check, not a proof";
};

/// Classifies `samples` evenly spaced exact points of `window` (both ends
/// included; a single sample means the left end) and groups non-escaping runs.
ClosednessReport complement_closedness_report(const PLMap1D& map, const RatInterval& window, std::size_t samples,
                                              std::size_t budget);

/// "k,x" rows with exact "p/q" values.
void write_orbit_csv(std::ostream& os, const Orbit<ExactScalar>& orbit);
/// "k,x,y" rows with round-trip doubles.
void write_orbit_csv(std::ostream& os, const Orbit<Point2>& orbit);
/// "index,x,verdict" rows followed by nothing else; runs are recoverable from the rows.
void write_report_csv(std::ostream& os, const ClosednessReport& report);
/// Multi-line human-readable summary.
std::string summarize(const ClosednessReport& report);

} // namespace escset

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "escset/exact.hpp"

namespace escset {

/// x -> slope * x + intercept, exactly.
struct Affine {
    ExactScalar slope;
    ExactScalar intercept;

    ExactScalar operator()(const ExactScalar& x) const { return slope * x + intercept; }
};

/// f(x) = slope * x + intercept on [breakpoint, next breakpoint).
struct AffinePiece {
    ExactScalar breakpoint;
    ExactScalar slope;
    ExactScalar intercept;
};

/// Closed interval [lo, hi] of exact rationals, lo <= hi.
class RatInterval {
public:
    RatInterval(ExactScalar lo, ExactScalar hi);
    static RatInterval point(const ExactScalar& x) { return {x, x}; }

    const ExactScalar& lo() const { return lo_; }
    const ExactScalar& hi() const { return hi_; }
    ExactScalar length() const { return hi_ - lo_; }
    ExactScalar midpoint() const { return (lo_ + hi_) / ExactScalar(2); }

    bool contains(const ExactScalar& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const RatInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    std::optional<RatInterval> intersect(const RatInterval& o) const;

    friend bool operator==(const RatInterval&, const RatInterval&) = default;
    std::string to_string() const { return "[" + lo_.to_string() + "," + hi_.to_string() + "]"; }

private:
    ExactScalar lo_;
    ExactScalar hi_;
};

/// An affine branch restricted to the closed interval [lo, hi].
struct AffineSegment {
    ExactScalar lo;
    ExactScalar hi;
    Affine f;
};

/**
 * Continuous piecewise-linear self-map of the real line with rational data.
 *
 * Below the first breakpoint the head rule applies. If `periodic_tail` is set
 * the pieces describe one fundamental interval [b0, b0 + 1) and the map obeys
 * f(x + 1) = f(x) + 1 for x >= b0; otherwise the last piece extends to +inf.
 * The constructor rejects data that is discontinuous at any breakpoint.
 */
class PLMap1D {
public:
    using State = ExactScalar;

    PLMap1D(std::string name, Affine head, std::vector<AffinePiece> pieces, bool periodic_tail);

    /// Continuous map through the knots (x_i, y_i), extended by straight
    /// lines with the given slopes beyond the first and last knot.
    static PLMap1D interpolate(std::string name, const ExactScalar& head_slope,
                               const std::vector<std::pair<ExactScalar, ExactScalar>>& knots,
                               const ExactScalar& tail_slope);

    ExactScalar apply(const ExactScalar& x) const;
    const std::string& name() const { return name_; }

    const Affine& head() const { return head_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }
    bool periodic_tail() const { return periodic_; }

    /// Affine branches covering [lo, hi] in order, split at every breakpoint.
    std::vector<AffineSegment> segments_on(const ExactScalar& lo, const ExactScalar& hi) const;
    /// Breakpoints strictly inside (lo, hi).
    std::vector<ExactScalar> breakpoints_in(const ExactScalar& lo, const ExactScalar& hi) const;

    /// Exact check of f(x) >= x for every real x.
    bool displacement_nonnegative() const { return nonneg_displacement_; }

private:
    struct Located {
        Affine f;
        std::optional<ExactScalar> next_breakpoint;
    };
    Located locate(const ExactScalar& x) const;
    void check_continuity() const;
    bool compute_nonneg_displacement() const;

    std::string name_;
    Affine head_;
    std::vector<AffinePiece> pieces_;
    bool periodic_ = false;
    bool nonneg_displacement_ = false;
};

/// Exact image f(iv) = [min f, max f] over iv.
RatInterval pl_image_interval(const PLMap1D& map, const RatInterval& iv);
/// Image under f^n.
RatInterval pl_image_interval(const PLMap1D& map, const RatInterval& iv, std::size_t n);

/// Maximal disjoint sorted intervals of {x in window : f(x) in target}.
std::vector<RatInterval> pl_preimage_interval(const PLMap1D& map, const RatInterval& target, const RatInterval& window);
/// Same, for a union of targets.
std::vector<RatInterval> pl_preimage_union(const PLMap1D& map, const std::vector<RatInterval>& targets,
                                           const RatInterval& window);

/// Affine branches of f^m on iv.
std::vector<AffineSegment> compose_segments(const PLMap1D& map, std::size_t m, const RatInterval& iv);
/// Fixed points of f^m in iv, ascending; a whole segment of fixed points
/// contributes its left endpoint.
std::vector<ExactScalar> fixed_points_in(const PLMap1D& map, std::size_t m, const RatInterval& iv);

/// Sorts and merges overlapping or touching intervals.
std::vector<RatInterval> merge_intervals(std::vector<RatInterval> ivs);

} // namespace escset

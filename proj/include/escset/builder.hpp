#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "escset/maps2d.hpp"

namespace escset {

enum class MembershipKind { InMainComponent, InOtherComponent, Outside };

struct Membership {
    MembershipKind kind = MembershipKind::Outside;
    /// Distance to the boundary of the other component; only set for InOtherComponent.
    double other_boundary_dist = 0.0;
};

/**
 * A piece of the closed set K = (R^2 \ U) u |Gamma| that matters for points
 * of U: a boundary curve of U (phi = 0) or the access curve (phi = parameter).
 * The parameter s equals one coordinate of at(s) (x when axis = 0, y when
 * axis = 1), so a disc of radius R around p only meets s in [p_axis - R, p_axis + R].
 */
struct KPiece {
    std::string label;
    std::function<Point2(double)> at;
    std::function<double(double)> phi;
    double s_min = 0.0;
    double s_max = 0.0;
    int axis = 0;
    /// Parameter of the point of the piece closest to p.
    std::function<double(const Point2&)> nearest;
};

/// Open region U (plus optional other components) with an access curve to infinity.
struct RegionSpec {
    std::string name;
    std::function<Membership(const Point2&)> membership;
    /// Distance to the boundary of U, for points of U.
    std::function<double(const Point2&)> boundary_dist;
    std::function<Point2(double)> gamma;
    /// Parameter t with gamma(t) = p when p lies on the curve.
    std::function<std::optional<double>(const Point2&)> gamma_inverse;
    Point2 x0;
    std::vector<KPiece> pieces;
    /// A window that shows the region at a useful scale.
    Window view;

    /// Checks gamma(0) = x0, injectivity and unboundedness of gamma on sampled
    /// parameters, and that gamma lies in U for t > 0. Throws ContractError.
    void validate() const;
};

/// Closed set K with the function phi on it, for the extension evaluator.
struct ExtensionSpec {
    std::function<double(const Point2&)> k_dist;
    /// Points of K near a query; the first n of them for sample budget n.
    std::function<std::vector<std::pair<Point2, double>>(const Point2& p, double radius, std::size_t n)> k_sampler;
    /// Closest point of K with its phi value.
    std::function<std::pair<Point2, double>(const Point2&)> k_nearest;
    /// phi at a point of K.
    std::function<double(const Point2&)> phi;
};

ExtensionSpec extension_for(const RegionSpec& region);

/**
 * Continuous extension psi of phi from K to the plane:
 * psi(p) = inf_{y in K} (phi(y) + |p - y| / d - 1) + d, d = dist(p, K),
 * and psi = phi on K. The infimum runs over the nearest point of K plus
 * `sample_budget` nested samples per piece within the radius that can still
 * improve it, so the estimate never increases as the budget grows.
 */
double tietze_psi(const ExtensionSpec& spec, const Point2& p, std::size_t sample_budget);

/**
 * The map whose escaping set is the region: x0 off the region, Gamma(2 t) on
 * the curve, Gamma(dist to the boundary) on other components and
 * Gamma(2 psi) on the rest of U.
 */
Map2D build_thm11_map(const RegionSpec& region, std::size_t sample_budget = 64);

RegionSpec half_strip_region();
/// Zigzag corridor {y > 0, |x - c(y)| < w} around a piecewise-linear centre line.
RegionSpec zigzag_region();
/// The half-strip with two discs as further components.
RegionSpec half_strip_discs_region();

/// "half-strip", "snake-region" and "half-strip-discs".
std::vector<RegionSpec> demo_regions();
RegionSpec demo_region(const std::string& name);

} // namespace escset

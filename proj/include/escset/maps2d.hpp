#pragma once

#include <functional>
#include <string>
#include <vector>

#include "escset/dynamics.hpp"
#include "escset/point.hpp"

namespace escset {

/**
 * A named continuous self-map of the plane evaluated in double precision.
 *
 * `features` optionally lists distinguished points inside a window (for
 * example the lattice points of the grid map); the raster engine classifies
 * a cell at such a point instead of at its center. `guard` marks states the
 * map can no longer evaluate faithfully; classify_numeric stops there.
 */
struct Map2D {
    using State = Point2;

    std::string id;
    std::function<Point2(const Point2&)> step;
    std::function<std::vector<Point2>(const Window&)> features;
    std::function<bool(const Point2&)> guard;

    Point2 apply(const Point2& p) const { return step(p); }
    const std::string& name() const { return id; }
    bool trustworthy(const Point2& p) const { return !guard || guard(p); }
    std::vector<Point2> feature_points(const Window& w) const { return features ? features(w) : std::vector<Point2>{}; }
};

/// sin^2(pi x), exactly 0 at integers.
double sin_pi_squared(double x);

Point2 halfplane_step(const Point2& p);
Point2 grid_step(const Point2& p);
Point2 grid_complement_step(const Point2& p);

Map2D halfplane_map();
Map2D grid_map();
Map2D grid_complement_map();

/// Names accepted by map2d_by_name.
std::vector<std::string> map2d_names();
/// "halfplane", "grid", "grid-complement", "sectors" (default parameters) or
/// "snake". Throws ContractError for anything else.
Map2D map2d_by_name(const std::string& name);

} // namespace escset

#include "escset/maps2d.hpp"

#include "escset/sectors.hpp"
#include "escset/snake.hpp"

#include <cmath>
#include <numbers>

namespace escset {

double sin_pi_squared(double x) {
    const double r = std::remainder(x, 1.0); // in [-1/2, 1/2], exact
    const double s = std::sin(std::numbers::pi * r);
    return s * s;
}

Point2 halfplane_step(const Point2& p) {
    const double x = p.x();
    const double y = p.y();
    if (x >= 0.0) {
        return {x, y + 1.0};
    }
    if (x <= -1.0) {
        return p;
    }
    return {x * (x + 2.0), y + x + 1.0};
}

Point2 grid_step(const Point2& p) {
    const double x = p.x();
    const double y = p.y();
    if (y > 2.0) {
        return p;
    }
    const double s = sin_pi_squared(x);
    if (y <= 1.0) {
        return {x + 1.0, std::fabs(2.0 * y) + s};
    }
    return {x + 2.0 - y, (2.0 - y) * s + 2.0};
}

Point2 grid_complement_step(const Point2& p) {
    const Point2 q = grid_step(p);
    return {q.x() - 1.0, q.y()};
}

namespace {

std::vector<Point2> lattice_on_axis(const Window& w) {
    std::vector<Point2> out;
    if (w.y_min > 0.0 || w.y_max < 0.0) {
        return out;
    }
    for (double n = std::ceil(w.x_min); n <= w.x_max; n += 1.0) {
        out.emplace_back(n, 0.0);
    }
    return out;
}

} // namespace

Map2D halfplane_map() { return {"halfplane", halfplane_step, {}, {}}; }
Map2D grid_map() { return {"grid", grid_step, lattice_on_axis, {}}; }
Map2D grid_complement_map() { return {"grid-complement", grid_complement_step, lattice_on_axis, {}}; }

std::vector<std::string> map2d_names() { return {"halfplane", "grid", "grid-complement", "sectors", "snake"}; }

Map2D map2d_by_name(const std::string& name) {
    if (name == "halfplane") {
        return halfplane_map();
    }
    if (name == "grid") {
        return grid_map();
    }
    if (name == "grid-complement") {
        return grid_complement_map();
    }
    if (name == "sectors") {
        return sectors_map();
    }
    if (name == "snake") {
        return snake_map();
    }
    throw ContractError("unknown 2D map '" + name + "'");
}

} // namespace escset

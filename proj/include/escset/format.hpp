#pragma once

#include <string>

#include "escset/point.hpp"

namespace escset {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);
/// "x,y" with round-trip precision.
std::string format_point(const Point2& p);

} // namespace escset

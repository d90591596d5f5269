#include "escset/point.hpp"

#include "escset/errors.hpp"

#include <ostream>

namespace escset {

Point2::Point2(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw ResourceError("non-finite coordinate (double range exceeded)");
    }
}

std::ostream& operator<<(std::ostream& os, const Point2& p) { return os << '(' << p.x() << ',' << p.y() << ')'; }

} // namespace escset

#include "escset/sectors.hpp"

#include <cmath>
#include <numbers>

namespace escset {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kSearchCap = std::int64_t{1} << 50;

} // namespace

PolarPoint to_polar(const Point2& p) {
    double theta = std::atan2(p.y(), p.x());
    if (theta < 0.0) {
        theta += kTwoPi;
    }
    if (theta >= kTwoPi) {
        theta = 0.0;
    }
    return {std::hypot(p.x(), p.y()), theta};
}

Point2 from_polar(const PolarPoint& q) { return {q.r * std::cos(q.theta), q.r * std::sin(q.theta)}; }

SectorParams SectorParams::defaults() {
    SectorParams p;
    p.rho = [](std::int64_t n) { return static_cast<double>(n); };
    p.phi = [](std::int64_t n) { return kTwoPi * (1.0 - 1.0 / (2.0 * static_cast<double>(n))); };
    p.phi_prime = [](std::int64_t n) { return kTwoPi * (1.0 - 1.0 / (2.0 * static_cast<double>(n) + 1.0)); };
    p.epsilon = 0.25;
    return p;
}

void SectorParams::validate(std::int64_t n_max) const {
    if (!rho || !phi || !phi_prime) {
        throw ContractError("SectorParams: missing sequence rule");
    }
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw ContractError("SectorParams: epsilon must lie in (0, 1/2)");
    }
    double prev_angle = 0.0;
    double prev_rho = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const double a = phi(n);
        const double b = phi_prime(n);
        const double r = rho(n);
        if (!(prev_angle < a && a < b && b < kTwoPi)) {
            throw ContractError("SectorParams: angles not strictly increasing below 2 pi at n=" + std::to_string(n));
        }
        if (!(r > prev_rho)) {
            throw ContractError("SectorParams: rho not increasing at n=" + std::to_string(n));
        }
        prev_angle = b;
        prev_rho = r;
    }
}

std::optional<std::int64_t> SectorParams::angular_index(double theta) const {
    // Smallest n with phi'_n > theta, by exponential then binary search.
    std::int64_t hi = 1;
    while (phi_prime(hi) <= theta) {
        if (hi >= kSearchCap) {
            return std::nullopt;
        }
        hi *= 2;
    }
    std::int64_t lo = hi / 2 + 1;
    if (hi == 1) {
        lo = 1;
    }
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (phi_prime(mid) > theta) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if (phi(lo) < theta) {
        return lo;
    }
    return std::nullopt;
}

std::optional<std::int64_t> SectorParams::sector_of(const PolarPoint& q) const {
    if (!(q.r > 0.0)) {
        return std::nullopt;
    }
    const auto n = angular_index(q.theta);
    if (n && q.r < rho(*n)) {
        return n;
    }
    return std::nullopt;
}

PolarPoint SectorParams::spine(std::int64_t n) const {
    return {rho(n) / (1.0 + epsilon), 0.5 * (phi(n) + phi_prime(n))};
}

double sector_profile(double t, double epsilon) {
    const double top = 1.0 / (1.0 + epsilon);
    if (t <= epsilon / (1.0 + epsilon)) {
        return t / epsilon;
    }
    if (t < top) {
        return top;
    }
    return (1.0 - t) / epsilon;
}

PolarPoint sector_step(const PolarPoint& q, const SectorParams& params) {
    const auto n = params.sector_of(q);
    if (!n) {
        return {0.0, 0.0};
    }
    const double a = params.phi(*n);
    const double b = params.phi_prime(*n);
    const double e = params.epsilon;
    const double r = (1.0 + e) * params.rho(*n + 1) * sector_profile(q.r / params.rho(*n), e)
                   * sector_profile((q.theta - a) / (b - a), e);
    return {r, 0.5 * (params.phi(*n + 1) + params.phi_prime(*n + 1))};
}

Map2D sectors_map(SectorParams params) {
    params.validate();
    auto step = [params](const Point2& p) { return from_polar(sector_step(to_polar(p), params)); };
    // Samples along the bisector of every sector that reaches into the window.
    auto features = [params](const Window& w) {
        std::vector<Point2> out;
        const double reach = std::hypot(std::max(std::fabs(w.x_min), std::fabs(w.x_max)),
                                        std::max(std::fabs(w.y_min), std::fabs(w.y_max)));
        const double cell = std::min(w.x_max - w.x_min, w.y_max - w.y_min) / 4096.0;
        for (std::int64_t n = 1; n <= 64; ++n) {
            const double mid = 0.5 * (params.phi(n) + params.phi_prime(n));
            const double r_max = std::min(params.rho(n), reach);
            for (double r = cell; r < r_max; r += cell) {
                Point2 p = from_polar({r, mid});
                if (w.contains(p)) {
                    out.push_back(p);
                }
            }
            if (params.rho(n) > reach) {
                break;
            }
        }
        return out;
    };
    return {"sectors", step, features, {}};
}

} // namespace escset

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "escset/maps2d.hpp"

namespace escset {

struct PolarPoint {
    double r = 0.0;
    double theta = 0.0; ///< in [0, 2 pi)
};

PolarPoint to_polar(const Point2& p);
Point2 from_polar(const PolarPoint& q);

/// Radii and angular bounds of the sectors A_n = {0 < r < rho_n, phi_n < theta < phi'_n}, n >= 1.
struct SectorParams {
    std::function<double(std::int64_t)> rho;
    std::function<double(std::int64_t)> phi;
    std::function<double(std::int64_t)> phi_prime;
    double epsilon = 0.25;

    /// rho_n = n, phi_n = 2 pi (1 - 1/(2n)), phi'_n = 2 pi (1 - 1/(2n + 1)), epsilon = 1/4.
    static SectorParams defaults();

    /// Checks 0 < phi_1 < phi'_1 < phi_2 < ... < 2 pi and rho increasing for n <= n_max,
    /// and epsilon in (0, 1/2). Throws ContractError.
    void validate(std::int64_t n_max = 64) const;

    /// Index n with theta in (phi_n, phi'_n), if any.
    std::optional<std::int64_t> angular_index(double theta) const;
    /// Index n of the sector A_n containing the point, if any.
    std::optional<std::int64_t> sector_of(const PolarPoint& q) const;

    PolarPoint spine(std::int64_t n) const;
};

/// Tent-with-plateau profile h on [0, 1].
double sector_profile(double t, double epsilon);

PolarPoint sector_step(const PolarPoint& q, const SectorParams& params);
Map2D sectors_map(SectorParams params = SectorParams::defaults());

} // namespace escset

#pragma once

#include <cstddef>

#include "escset/dynamics.hpp"
#include "escset/pl_map.hpp"

namespace escset {

/**
 * The staircase map: x + 1 below 3/4, and on every [n - 1/4, n + 3/4), n >= 1,
 * four branches of slopes -3, 5, -3, 5 meeting at the fixed points n and
 * n + 1/2. It satisfies f(x) >= x and f(x + 1) = f(x) + 1 for x >= 3/4.
 * The returned object is shared and immutable.
 */
const PLMap1D& staircase_map();

/**
 * Exact classification of a 1D orbit.
 *
 * When the map has f(x) >= x and integral slopes and intercepts, an orbit of
 * a point with denominator q stays in (1/q)Z and never decreases, so it is
 * either eventually fixed (detected exactly) or increases by at least 1/q per
 * step without bound. In that case the result is never Undetermined: the
 * budget ends in EscapingToBudget with the certificate recorded. Other maps
 * fall back to classify_numeric under `cfg`.
 */
EscapeVerdict<ExactScalar> classify_exact(const PLMap1D& map, const ExactScalar& x, const ClassifyConfig& cfg);

/// classify_exact on the staircase map with `budget` iterations.
EscapeVerdict<ExactScalar> classify_staircase(const ExactScalar& x, std::size_t budget);

/// True when the monotone-lattice certificate of classify_exact applies.
bool has_monotone_lattice_certificate(const PLMap1D& map);

/// Result of expanding a small interval under the staircase map.
struct DensityProbe {
    std::size_t steps = 0;
    RatInterval image{ExactScalar(0), ExactScalar(0)};
    ExactScalar escaping_point;
    ExactScalar fixed_point;
};

/**
 * Iterates the exact image of `delta` under the staircase map until it lies
 * in (3/4, +inf) with length > 1/2, then locates inside it a point of the
 * form n +- 1/4 (escaping) and one of the form n or n + 1/2 (fixed); both are
 * confirmed with classify_staircase. Throws ContractError if `max_steps` is
 * not enough.
 */
DensityProbe staircase_density_probe(const RatInterval& delta, std::size_t max_steps = 64);

ExactScalar ceil(const ExactScalar& x);

} // namespace escset

#pragma once

#include <cstddef>
#include <cstdint>

#include "escset/maps2d.hpp"

namespace escset {

// Zigzag geometry: harmonic partial sums, the spine curve and its flanks.

/// A_n = sum_{k=0}^{n} 1/(k+1) in double precision.
double snake_A(std::int64_t n);
/// A_n in exact arithmetic.
ExactScalar snake_A_exact(std::int64_t n);

/// Spine curve Gamma(t), t >= 0. Vertices: Gamma(2n) = (0, 4^-n), Gamma(2n+1) = (A_n, 2^-(2n+1)).
Point2 snake_gamma(double t);
/// Gamma_l(t) = Gamma(t) - (y, 0) and Gamma_r(t) = Gamma(t) + (y, 0).
Point2 snake_gamma_left(double t);
Point2 snake_gamma_right(double t);

/// Parameter t with pi_2(Gamma(t)) = y, for y in (0, 1].
double snake_gamma_param(double y);
/// phi(y): the x-coordinate of the spine at height y in (0, 1].
double snake_phi(double y);

struct SnakeProfiles {
    double beta;
    double h1;
    double h1_inv;
    double h2;
    double alpha; ///< only meaningful for t in [0, 1]
};

double snake_beta(double t);
double snake_h1(double t);
double snake_h1_inv(double s);
double snake_h2(double t);
double snake_alpha(double t);
/// All profiles at once; alpha is evaluated only when t <= 1 (NaN otherwise).
SnakeProfiles snake_profiles(double t);

/// psi on the spine and on the flanks, in curve parameters.
double snake_psi_param_gamma(double t);
double snake_psi_param_flank(double t);

struct UCoords {
    double eta;
    double y;
};

/// eta = (x - phi(y)) / y for y in (0, 1]; throws ContractError otherwise.
UCoords u_coords(const Point2& p);
/// x = phi(y) + sign * eta * y.
Point2 from_u(const UCoords& u, int sign = 1);

/// Half-width, in eta units, of the band around eta in {-1, 0, 1} that is
/// treated as lying on a curve. It reflects the rounding error of
/// (x - phi(y)) / y.
double snake_eta_tolerance(const Point2& p);

/// False once the U-coordinates of a point in the open strip are too
/// coarse to separate U from its flanks.
bool snake_trustworthy(const Point2& p);

Point2 snake_step(const Point2& p);
Map2D snake_map();

/// Where an orbit settles in U-coordinates.
enum class SnakeFate {
    Spine,      ///< reached eta = 0, i.e. the curve Gamma, which escapes
    Flank,      ///< sits on eta = +-1, which does not escape
    Exterior,   ///< |eta| > 1
    OffStrip,   ///< y outside (0, 1), where the map is the identity
    Unresolved, ///< none of the above before precision or the step limit ran out
};

const char* to_string(SnakeFate fate);

struct SnakeFateReport {
    SnakeFate fate = SnakeFate::Unresolved;
    std::size_t steps = 0;
};

/// Iterates until the orbit lands on one of the invariant pieces above.
SnakeFateReport snake_fate(const Point2& p, std::size_t max_steps = 200);

} // namespace escset

#include "escset/snake.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <vector>

namespace escset {

namespace {

constexpr std::int64_t kTableSize = std::int64_t{1} << 16;
const double kTinyHeight = std::ldexp(1.0, -1000);
constexpr double kMaxEtaTolerance = 1.0 / 64.0;

const std::vector<double>& a_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(static_cast<std::size_t>(kTableSize));
        double sum = 0.0;
        for (std::int64_t k = 0; k < kTableSize; ++k) {
            sum += 1.0 / static_cast<double>(k + 1);
            t[static_cast<std::size_t>(k)] = sum;
        }
        return t;
    }();
    return table;
}

struct Segment {
    std::int64_t n;
    double lambda;
};

Segment locate(double y) {
    if (!(y > 0.0 && y <= 1.0)) {
        throw ContractError("snake: height must lie in (0, 1]");
    }
    int e = 0;
    const double m = std::frexp(y, &e);
    const std::int64_t n = m == 0.5 ? 1 - e : -e;
    return {n, 2.0 - std::ldexp(y, static_cast<int>(n + 1))};
}

double phi_on(const Segment& s) {
    return s.n % 2 == 0 ? s.lambda * snake_A(s.n / 2) : (1.0 - s.lambda) * snake_A((s.n - 1) / 2);
}

double gamma_height(double t) {
    const double n = std::floor(t);
    const double lambda = t - n;
    return std::ldexp(2.0 - lambda, -static_cast<int>(n) - 1);
}

} // namespace

double snake_A(std::int64_t n) {
    if (n < 0) {
        throw ContractError("snake_A: negative index");
    }
    const auto& t = a_table();
    if (n < kTableSize) {
        return t[static_cast<std::size_t>(n)];
    }
    double sum = t.back();
    for (std::int64_t k = kTableSize; k <= n; ++k) {
        sum += 1.0 / static_cast<double>(k + 1);
    }
    return sum;
}

ExactScalar snake_A_exact(std::int64_t n) {
    if (n < 0) {
        throw ContractError("snake_A_exact: negative index");
    }
    ExactScalar sum(0);
    for (std::int64_t k = 0; k <= n; ++k) {
        sum += ExactScalar(1, k + 1);
    }
    return sum;
}

Point2 snake_gamma(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ContractError("snake_gamma: parameter must be finite and >= 0");
    }
    const double nd = std::floor(t);
    const auto n = static_cast<std::int64_t>(nd);
    const double lambda = t - nd;
    const double y = std::ldexp(2.0 - lambda, -static_cast<int>(n) - 1);
    const double x = n % 2 == 0 ? lambda * snake_A(n / 2) : (1.0 - lambda) * snake_A((n - 1) / 2);
    return {x, y};
}

Point2 snake_gamma_left(double t) {
    const Point2 g = snake_gamma(t);
    return {g.x() - g.y(), g.y()};
}

Point2 snake_gamma_right(double t) {
    const Point2 g = snake_gamma(t);
    return {g.x() + g.y(), g.y()};
}

double snake_gamma_param(double y) {
    const auto s = locate(y);
    return static_cast<double>(s.n) + s.lambda;
}

double snake_phi(double y) { return phi_on(locate(y)); }

double snake_beta(double t) {
    if (!(t >= 0.0)) {
        throw ContractError("snake_beta: t must be >= 0");
    }
    if (t <= 1.0) {
        return 2.0;
    }
    const double n = std::floor(t);
    if (t <= n + 1.0 - 1.0 / (n + 1.0)) {
        return t + t / n;
    }
    return n + 2.0;
}

double snake_h1(double t) {
    if (!(t >= 0.0)) {
        throw ContractError("snake_h1: t must be >= 0");
    }
    return t <= 0.5 ? 4.0 * t : 2.0 * t + 1.0;
}

double snake_h1_inv(double s) {
    if (!(s >= 0.0)) {
        throw ContractError("snake_h1_inv: argument must be >= 0");
    }
    return s <= 2.0 ? s / 4.0 : (s - 1.0) / 2.0;
}

double snake_h2(double t) {
    if (!(t >= 0.0)) {
        throw ContractError("snake_h2: t must be >= 0");
    }
    return 2.0 * t;
}

double snake_alpha(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw ContractError("snake_alpha: t must lie in [0, 1]");
    }
    return t <= 0.5 ? 0.0 : 2.0 * t - 1.0;
}

SnakeProfiles snake_profiles(double t) {
    return {snake_beta(t), snake_h1(t), snake_h1_inv(t), snake_h2(t),
            t <= 1.0 ? snake_alpha(t) : std::numeric_limits<double>::quiet_NaN()};
}

double snake_psi_param_gamma(double t) { return snake_h1(snake_beta(snake_h1_inv(t))); }
double snake_psi_param_flank(double t) { return snake_h2(snake_beta(t / 2.0)); }

UCoords u_coords(const Point2& p) {
    if (!(p.y() > 0.0 && p.y() <= 1.0)) {
        throw ContractError("u_coords: y must lie in (0, 1]");
    }
    return {(p.x() - snake_phi(p.y())) / p.y(), p.y()};
}

Point2 from_u(const UCoords& u, int sign) {
    if (!(u.y > 0.0 && u.y <= 1.0)) {
        throw ContractError("from_u: y must lie in (0, 1]");
    }
    return {snake_phi(u.y) + static_cast<double>(sign) * u.eta * u.y, u.y};
}

double snake_eta_tolerance(const Point2& p) {
    const double y = p.y();
    return 8.0 * DBL_EPSILON * (std::fabs(p.x()) + std::fabs(snake_phi(y)) + y) / y;
}

bool snake_trustworthy(const Point2& p) {
    const double y = p.y();
    if (!(y > 0.0 && y < 1.0)) {
        return true;
    }
    return y >= kTinyHeight && snake_eta_tolerance(p) <= kMaxEtaTolerance;
}

namespace {

// Signed eta snapped onto {-1, 0, 1} within the rounding band.
double snapped_eta(const Point2& p, double phi) {
    double eta = (p.x() - phi) / p.y();
    const double tol = snake_eta_tolerance(p);
    if (std::fabs(eta) <= tol) {
        return 0.0;
    }
    if (std::fabs(std::fabs(eta) - 1.0) <= tol) {
        return eta < 0.0 ? -1.0 : 1.0;
    }
    return eta;
}

} // namespace

Point2 snake_step(const Point2& p) {
    const double y = p.y();
    if (!(y > 0.0 && y < 1.0)) {
        return p;
    }
    const auto seg = locate(y);
    const double eta_signed = snapped_eta(p, phi_on(seg));
    const double sign = eta_signed < 0.0 ? -1.0 : 1.0;
    const double eta = std::fabs(eta_signed);

    const double t0 = static_cast<double>(seg.n) + seg.lambda;
    const double y_spine = gamma_height(snake_psi_param_gamma(t0));
    const double y_flank = gamma_height(snake_psi_param_flank(t0));
    const double a = snake_alpha(y);

    const double e = std::min(eta, 1.0);
    const double eta_next = (1.0 - a) * snake_alpha(e) + a * e;
    const double y_next = (1.0 - a) * ((1.0 - e) * y_spine + e * y_flank) + a * y;
    if (!(y_next >= kTinyHeight)) {
        throw ResourceError("snake: image height below double resolution");
    }
    double x_next = snake_phi(y_next) + sign * eta_next * y_next;
    if (eta > 1.0) {
        x_next += sign * (eta - 1.0) * y;
    }
    return {x_next, y_next};
}

Map2D snake_map() { return {"snake", snake_step, {}, snake_trustworthy}; }

const char* to_string(SnakeFate fate) {
    switch (fate) {
    case SnakeFate::Spine: return "spine";
    case SnakeFate::Flank: return "flank";
    case SnakeFate::Exterior: return "exterior";
    case SnakeFate::OffStrip: return "off-strip";
    case SnakeFate::Unresolved: return "unresolved";
    }
    return "?";
}

SnakeFateReport snake_fate(const Point2& p, std::size_t max_steps) {
    Point2 state = p;
    for (std::size_t k = 0;; ++k) {
        const double y = state.y();
        if (!(y > 0.0 && y < 1.0)) {
            return {SnakeFate::OffStrip, k};
        }
        if (!snake_trustworthy(state)) {
            return {SnakeFate::Unresolved, k};
        }
        const double eta = std::fabs(snapped_eta(state, snake_phi(y)));
        if (eta == 0.0) {
            return {SnakeFate::Spine, k};
        }
        if (eta == 1.0) {
            return {SnakeFate::Flank, k};
        }
        if (eta > 1.0) {
            return {SnakeFate::Exterior, k};
        }
        if (k == max_steps) {
            return {SnakeFate::Unresolved, k};
        }
        try {
            state = snake_step(state);
        } catch (const ResourceError&) {
            return {SnakeFate::Unresolved, k};
        }
    }
}

} // namespace escset

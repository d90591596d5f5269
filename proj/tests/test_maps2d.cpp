#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "escset/analysis.hpp"
#include "escset/maps2d.hpp"
#include "escset/sectors.hpp"
#include "escset/snake.hpp"

using namespace escset;

namespace {

bool close(const Point2& a, const Point2& b, double tol) { return distance(a, b) <= tol; }

} // namespace

TEST_SUITE("maps2d") {

TEST_CASE("half-plane map branches") {
    CHECK(halfplane_step({0.0, 0.0}) == Point2(0.0, 1.0));
    CHECK(halfplane_step({-1.0, 7.0}) == Point2(-1.0, 7.0));
    CHECK(halfplane_step({-0.5, 0.0}) == Point2(-0.75, 0.5));
    CHECK(halfplane_step({2.0, 3.0}) == Point2(2.0, 4.0));
}

TEST_CASE("grid map branches") {
    for (int n = -5; n <= 5; ++n) {
        CHECK(grid_step({double(n), 0.0}) == Point2(double(n + 1), 0.0));
        CHECK(grid_complement_step({double(n), 0.0}) == Point2(double(n), 0.0));
    }
    CHECK(grid_step({3.0, 5.0}) == Point2(3.0, 5.0));
    CHECK(grid_step({0.5, 0.0}) == Point2(1.5, 1.0));
    CHECK(grid_complement_step({3.0, 5.0}) == Point2(2.0, 5.0));
    CHECK(grid_complement_step({0.5, 0.0}) == Point2(0.5, 1.0));
    CHECK(sin_pi_squared(7.0) == 0.0);
    CHECK(sin_pi_squared(-3.0) == 0.0);
    CHECK(sin_pi_squared(0.5) == doctest::Approx(1.0));
}

TEST_CASE("grid complement is the grid map shifted by one, bitwise") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const Point2 p(u(rng), u(rng) / 3.0);
        const Point2 g = grid_step(p);
        CHECK(same_bits(grid_complement_step(p), Point2(g.x() - 1.0, g.y())));
    }
}

TEST_CASE("grid dichotomy") {
    const ClassifyConfig cfg;
    for (int n = -50; n <= 50; ++n) {
        const auto orbit = iterate_orbit(grid_map(), Point2(double(n), 0.0), 20);
        for (std::size_t k = 0; k < orbit.states.size(); ++k) {
            REQUIRE(orbit.states[k] == Point2(double(n) + double(k), 0.0));
        }
        CHECK(classify_numeric(grid_map(), Point2(double(n), 0.0), cfg, Evidence::Drop).escaping());
        CHECK(classify_numeric(grid_complement_map(), Point2(double(n), 0.0), cfg, Evidence::Drop).fixed());
    }
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ux(-50.0, 50.0);
    std::uniform_real_distribution<double> uy(-3.0, 3.0);
    for (int i = 0; i < 10000; ++i) {
        const Point2 p(ux(rng), uy(rng));
        REQUIRE(classify_numeric(grid_map(), p, cfg, Evidence::Drop).fixed());
    }
}

TEST_CASE("sector parameters") {
    const auto params = SectorParams::defaults();
    CHECK_NOTHROW(params.validate(1000));
    auto bad = params;
    bad.epsilon = 0.5;
    CHECK_THROWS_AS(bad.validate(), ContractError);
    bad = params;
    bad.phi_prime = [](std::int64_t) { return 1.0; };
    CHECK_THROWS_AS(bad.validate(), ContractError);
    bad = params;
    bad.rho = [](std::int64_t) { return 3.0; };
    CHECK_THROWS_AS(bad.validate(), ContractError);
    for (std::int64_t n = 1; n <= 200; ++n) {
        const double mid = 0.5 * (params.phi(n) + params.phi_prime(n));
        REQUIRE(params.angular_index(mid) == n);
    }
}

TEST_CASE("sector spine moves to the next spine point") {
    const auto params = SectorParams::defaults();
    for (std::int64_t n = 1; n <= 30; ++n) {
        const Point2 s = from_polar(params.spine(n));
        const Point2 next = from_polar(params.spine(n + 1));
        CHECK(close(from_polar(sector_step(params.spine(n), params)), next, 1e-12 * (1.0 + next.norm())));
        CHECK(close(sectors_map().apply(s), next, 1e-12 * (1.0 + next.norm())));
    }
}

TEST_CASE("sector map sends boundaries and the outside to the origin") {
    const auto params = SectorParams::defaults();
    for (std::int64_t n = 1; n <= 5; ++n) {
        const PolarPoint edge{params.rho(n) / 2.0, params.phi(n)};
        const auto img = sector_step(edge, params);
        CHECK(img.r == 0.0);
        const PolarPoint far{params.rho(n) * 1.01, 0.5 * (params.phi(n) + params.phi_prime(n))};
        CHECK(sector_step(far, params).r == 0.0);
    }
    CHECK(sectors_map().apply({1.0, 1.0}) == Point2(0.0, 0.0));
    CHECK(sectors_map().apply({0.0, 0.0}) == Point2(0.0, 0.0));
}

TEST_CASE("sector points move into the next sector and join the spine") {
    const auto params = SectorParams::defaults();
    const double e = params.epsilon;
    const double top = 1.0 / (1.0 + e);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit(0.001, 0.999);
    for (int i = 0; i < 1000; ++i) {
        std::int64_t n = 1 + static_cast<std::int64_t>(i % 6);
        const double a = unit(rng);
        const double b = unit(rng);
        PolarPoint p{a * params.rho(n), params.phi(n) + b * (params.phi_prime(n) - params.phi(n))};
        REQUIRE(params.sector_of(p) == n);
        p = sector_step(p, params);
        ++n;
        REQUIRE(params.sector_of(p) == n);
        CHECK(p.theta == doctest::Approx(0.5 * (params.phi(n) + params.phi_prime(n))));
        double alpha = p.r / params.rho(n);
        CHECK(alpha == doctest::Approx((1.0 + e) * sector_profile(a, e) * sector_profile(b, e)));
        // On the bisector the radial fraction follows the profile itself.
        int steps = 0;
        while (std::fabs(alpha - top) > 1e-9 && steps < 60) {
            p = sector_step(p, params);
            ++n;
            REQUIRE(params.sector_of(p) == n);
            const double next = p.r / params.rho(n);
            CHECK(next == doctest::Approx(sector_profile(alpha, e)));
            alpha = next;
            ++steps;
        }
        CHECK(std::fabs(alpha - top) <= 1e-9);
    }
}

TEST_CASE("snake curve vertices") {
    CHECK(snake_gamma(0.0) == Point2(0.0, 1.0));
    CHECK(snake_gamma(1.0) == Point2(1.0, 0.5));
    CHECK(close(snake_gamma(3.0), Point2(1.5, 0.125), 1e-15));
    for (std::int64_t n = 0; n <= 12; ++n) {
        CHECK(close(snake_gamma(2.0 * double(n)), Point2(0.0, std::ldexp(1.0, -2 * int(n))), 1e-15));
        CHECK(close(snake_gamma(2.0 * double(n) + 1.0), Point2(snake_A(n), std::ldexp(1.0, -2 * int(n) - 1)), 1e-14));
        CHECK(snake_A_exact(n + 1) - snake_A_exact(n) == ExactScalar(1, n + 2));
        CHECK(snake_A(n) == doctest::Approx(snake_A_exact(n).to_double()).epsilon(1e-14));
    }
    CHECK_THROWS_AS(snake_gamma(-1.0), ContractError);
    // Continuity at integer parameters.
    for (int n = 0; n < 20; ++n) {
        CHECK(close(snake_gamma(n - 1e-12 + 1.0), snake_gamma(n + 1.0), 1e-10));
    }
}

TEST_CASE("snake profiles") {
    CHECK(snake_beta(2.0) == 3.0);
    for (int n = 1; n <= 50; ++n) {
        CHECK(snake_beta(double(n)) == double(n + 1));
    }
    CHECK(snake_h1(0.5) == 2.0);
    CHECK(snake_h1_inv(snake_h1(0.3)) == doctest::Approx(0.3));
    CHECK(snake_h1_inv(snake_h1(7.0)) == doctest::Approx(7.0));
    CHECK(snake_h2(3.0) == 6.0);
    CHECK(snake_alpha(0.25) == 0.0);
    CHECK(snake_alpha(0.75) == 0.5);
    CHECK_THROWS_AS(snake_alpha(1.5), ContractError);
    CHECK_THROWS_AS(snake_beta(-0.1), ContractError);
    CHECK_THROWS_AS(snake_h1(-1.0), ContractError);
    const auto all = snake_profiles(0.75);
    CHECK(all.beta == 2.0);
    CHECK(all.alpha == 0.5);
    CHECK(std::isnan(snake_profiles(3.0).alpha));
}

TEST_CASE("orbits of beta reach the integers") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 40.0);
    for (int i = 0; i < 1000; ++i) {
        double t = u(rng);
        int k = 0;
        while (t != std::floor(t) && k < 10000000) {
            t = snake_beta(t);
            ++k;
        }
        CHECK(t == std::floor(t));
    }
}

TEST_CASE("kdl and iab inequalities") {
    std::mt19937_64 rng(8);
    for (std::int64_t n = 0; n <= 20; ++n) {
        std::uniform_real_distribution<double> u(double(n), double(n + 2));
        for (int i = 0; i < 100000; ++i) {
            const double s = u(rng);
            const double t = u(rng);
            if (s != t) {
                REQUIRE(distance(snake_gamma(s), snake_gamma(t)) < 4.0 * snake_A(n) * std::fabs(s - t));
            }
        }
    }
    for (int n = 1; n <= 1000; ++n) {
        for (int i = 0; i <= 1000; ++i) {
            const double t = n + i / 1000.0;
            REQUIRE(std::fabs(snake_beta(t) - (t + 1.0)) <= 1.0 / n);
        }
    }
}

TEST_CASE("U-coordinates") {
    CHECK(snake_phi(0.5) == 1.0);
    CHECK(u_coords({1.0, 0.5}).eta == 0.0);
    CHECK(from_u({1.0, 0.5}, 1) == Point2(1.5, 0.5));
    CHECK(from_u({1.0, 0.5}, -1) == Point2(0.5, 0.5));
    CHECK_THROWS_AS(u_coords({0.0, 0.0}), ContractError);
    CHECK_THROWS_AS(u_coords({0.0, 1.5}), ContractError);
    for (int i = 1; i <= 200; ++i) {
        const double y = i / 200.0;
        for (const double eta : {-2.0, -1.0, -0.3, 0.0, 0.7, 1.0, 3.0}) {
            const Point2 p = from_u({eta, y});
            const auto u = u_coords(p);
            CHECK(u.eta == doctest::Approx(eta).epsilon(1e-12).scale(1.0));
            CHECK(u.y == y);
            CHECK(close(from_u(u), p, 1e-12));
        }
    }
    for (const double t : {0.3, 1.0, 2.5, 5.75}) {
        CHECK(std::fabs(u_coords(snake_gamma(t)).eta) < 1e-12);
        CHECK(u_coords(snake_gamma_right(t)).eta == doctest::Approx(1.0));
        CHECK(u_coords(snake_gamma_left(t)).eta == doctest::Approx(-1.0));
    }
}

TEST_CASE("snake map on the curve and its flanks") {
    CHECK(snake_step({5.0, 3.0}) == Point2(5.0, 3.0));
    CHECK(snake_step({-2.0, -0.5}) == Point2(-2.0, -0.5));
    CHECK(close(snake_step(snake_gamma(3.0)), Point2(11.0 / 6.0, 1.0 / 32.0), 1e-12));
    for (int n = 1; n <= 15; ++n) {
        CHECK(close(snake_step(snake_gamma(2.0 * n + 1.0)), snake_gamma(2.0 * n + 3.0), 1e-10));
        CHECK(snake_psi_param_gamma(2.0 * n + 1.0) == 2.0 * n + 3.0);
        CHECK(close(snake_step(snake_gamma_left(2.0 * n)), snake_gamma_left(2.0 * n + 2.0), 1e-10));
        CHECK(close(snake_step(snake_gamma_right(2.0 * n)), snake_gamma_right(2.0 * n + 2.0), 1e-10));
    }
    const ClassifyConfig cfg{1000, 50.0, 10};
    CHECK_FALSE(classify_numeric(snake_map(), snake_gamma_left(4.5), cfg).escaping());
}

TEST_CASE("snake: 3/4 <= y < 1 gives y' < alpha(y) inside U") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> uy(0.75, 1.0);
    std::uniform_real_distribution<double> ue(-0.999, 0.999);
    for (int i = 0; i < 10000; ++i) {
        const double y = uy(rng);
        const Point2 p = from_u({ue(rng), y});
        CHECK(snake_step(p).y() < snake_alpha(y));
    }
}

TEST_CASE("snake fate dichotomy") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> uy(1e-6, 0.999);
    std::uniform_real_distribution<double> ue(-0.999, 0.999);
    std::uniform_real_distribution<double> ut(0.0, 30.0);
    const ClassifyConfig cfg{1000, 50.0, 10};
    std::size_t spine = 0;
    for (int i = 0; i < 1000; ++i) {
        const Point2 p = from_u({ue(rng), uy(rng)});
        const auto fate = snake_fate(p);
        spine += fate.fate == SnakeFate::Spine ? 1 : 0;
        CHECK_FALSE(classify_numeric(snake_map(), p, cfg, Evidence::Drop).fixed());
    }
    CHECK(spine == 1000);
    for (int i = 0; i < 500; ++i) {
        const double t = ut(rng);
        for (const Point2 p : {snake_gamma_left(t), snake_gamma_right(t)}) {
            if (!(p.y() < 1.0)) {
                continue;
            }
            CHECK(snake_fate(p).fate == SnakeFate::Flank);
            CHECK_FALSE(classify_numeric(snake_map(), p, cfg, Evidence::Drop).escaping());
        }
    }
    // Some U points do reach a small radius before double precision runs out.
    const ClassifyConfig small{1000, 2.5, 5};
    std::size_t escaping = 0;
    for (int i = 0; i < 200; ++i) {
        escaping += classify_numeric(snake_map(), from_u({ue(rng), uy(rng)}), small, Evidence::Drop).escaping() ? 1 : 0;
    }
    CHECK(escaping > 0);
}

TEST_CASE("continuity across every branch boundary") {
    for (const auto& name : map2d_names()) {
        const Map2D map = map2d_by_name(name);
        for (const auto& seam : standard_seams(name)) {
            const auto res = probe_seam(map, seam);
            INFO(name << ": " << seam.label << " last gap " << res.gaps.back());
            CHECK(res.converging);
        }
    }
}

TEST_CASE("complete invariance: images of escaping points escape") {
    std::mt19937_64 rng(14);
    struct Probe {
        Map2D map;
        Window w;
    };
    const std::vector<Probe> probes{{halfplane_map(), {-2.0, 2.0, -2.0, 2.0}},
                                    {grid_map(), {-3.0, 3.0, -1.0, 1.0}},
                                    {grid_complement_map(), {-3.0, 3.0, -1.0, 1.0}},
                                    {sectors_map(), {-6.0, 6.0, -6.0, 6.0}},
                                    {snake_map(), {-0.5, 2.5, 0.0, 1.0}}};
    const std::size_t budget = 200;
    for (const auto& pr : probes) {
        std::uniform_real_distribution<double> ux(pr.w.x_min, pr.w.x_max);
        std::uniform_real_distribution<double> uy(pr.w.y_min, pr.w.y_max);
        for (int i = 0; i < 10000; ++i) {
            Point2 p(ux(rng), uy(rng));
            if (pr.map.id == "grid" || pr.map.id == "grid-complement") {
                if (i % 10 == 0) {
                    p = Point2(std::round(p.x()), 0.0);
                }
            }
            const auto v = classify_numeric(pr.map, p, ClassifyConfig{budget, 50.0, 5}, Evidence::Drop);
            if (!v.escaping()) {
                continue;
            }
            const auto w = classify_numeric(pr.map, pr.map.apply(p), ClassifyConfig{budget - 1, 50.0, 5}, Evidence::Drop);
            INFO(pr.map.id << " at " << p.x() << "," << p.y());
            CHECK(w.escaping());
        }
    }
}

TEST_CASE("maps by name") {
    for (const auto& name : map2d_names()) {
        CHECK(map2d_by_name(name).name() == name);
    }
    CHECK_THROWS_AS(map2d_by_name("nope"), ContractError);
}

} // TEST_SUITE

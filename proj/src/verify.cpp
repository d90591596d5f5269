#include "escset/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "escset/analysis.hpp"
#include "escset/errors.hpp"
#include "escset/format.hpp"
#include "escset/snake.hpp"
#include "escset/staircase.hpp"

namespace escset {

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::vector<std::string> verify_suite_names() { return {"kdl", "iab", "continuity", "dichotomy", "thm12"}; }

namespace {

VerifyReport kdl_suite(std::mt19937_64& rng) {
    VerifyReport rep{"kdl", {}};
    constexpr int kPairs = 100000;
    for (std::int64_t n = 0; n <= 20; ++n) {
        std::uniform_real_distribution<double> u(static_cast<double>(n), static_cast<double>(n + 2));
        const double bound = 4.0 * snake_A(n);
        std::size_t bad = 0;
        double worst = 0.0;
        for (int i = 0; i < kPairs; ++i) {
            const double s = u(rng);
            const double t = u(rng);
            if (s == t) {
                continue;
            }
            const double ratio = distance(snake_gamma(s), snake_gamma(t)) / std::fabs(s - t);
            worst = std::max(worst, ratio);
            if (!(ratio < bound)) {
                ++bad;
            }
        }
        rep.checks.push_back({"n=" + std::to_string(n), bad == 0,
                              "max |G(s)-G(t)|/|s-t| = " + format_double(worst) + " vs 4 A_n = " + format_double(bound)});
    }
    return rep;
}

VerifyReport iab_suite() {
    VerifyReport rep{"iab", {}};
    std::size_t bad = 0;
    std::int64_t first_bad = 0;
    double worst = 0.0;
    for (std::int64_t n = 1; n <= 1000; ++n) {
        const double nd = static_cast<double>(n);
        for (int i = 0; i < 1000; ++i) {
            const double t = nd + static_cast<double>(i) / 999.0;
            const double excess = std::fabs(snake_beta(t) - (t + 1.0)) * nd;
            worst = std::max(worst, excess);
            if (!(excess <= 1.0)) {
                if (bad++ == 0) {
                    first_bad = n;
                }
            }
        }
    }
    rep.checks.push_back({"|beta(t)-(t+1)| <= 1/n, n <= 1000", bad == 0,
                          "max n|beta(t)-(t+1)| = " + format_double(worst)
                              + (bad ? ", first failure at n=" + std::to_string(first_bad) : std::string())});
    return rep;
}

VerifyReport continuity_suite() {
    VerifyReport rep{"continuity", {}};
    for (const auto& name : planar_map_names()) {
        const Map2D map = resolve_map2d(name);
        for (const auto& seam : standard_seams(name)) {
            const auto res = probe_seam(map, seam);
            std::ostringstream detail;
            detail << "gap " << format_double(res.gaps.front()) << " -> " << format_double(res.gaps.back());
            if (!seam.slow) {
                detail << ", fitted C = " << format_double(res.fitted_c);
            } else {
                detail << " over delta 0.7e-2 .. 0.7e-256";
            }
            rep.checks.push_back({name + ": " + seam.label, res.converging, detail.str()});
        }
    }
    return rep;
}

VerifyReport dichotomy_suite(std::mt19937_64& rng) {
    VerifyReport rep{"dichotomy", {}};
    {
        std::uniform_int_distribution<std::int64_t> den(1, 50);
        std::size_t undetermined = 0;
        std::size_t bad_form = 0;
        for (int i = 0; i < 2000; ++i) {
            const std::int64_t q = den(rng);
            std::uniform_int_distribution<std::int64_t> num(0, 10 * q);
            const auto v = classify_staircase(ExactScalar(num(rng), q), 1000);
            if (v.kind() == VerdictKind::Undetermined) {
                ++undetermined;
            } else if (v.fixed() && !(ExactScalar(2) * v.as_fixed().point).is_integer()) {
                ++bad_form;
            }
        }
        rep.checks.push_back({"staircase: 2000 rationals, no Undetermined, fixed points in Z/2",
                              undetermined == 0 && bad_form == 0,
                              std::to_string(undetermined) + " undetermined, " + std::to_string(bad_form) + " bad fixed points"});
        std::size_t wrong = 0;
        for (std::int64_t n = 1; n <= 9; ++n) {
            for (const auto& x : {ExactScalar(4 * n - 1, 4), ExactScalar(4 * n + 1, 4)}) {
                wrong += classify_staircase(x, 1000).escaping() ? 0 : 1;
            }
            for (const auto& x : {ExactScalar(n), ExactScalar(2 * n + 1, 2)}) {
                const auto v = classify_staircase(x, 1000);
                wrong += v.fixed() && v.as_fixed().point == x ? 0 : 1;
            }
        }
        rep.checks.push_back({"staircase: n +- 1/4 escape, n and n + 1/2 fixed, 1 <= n <= 9", wrong == 0,
                              std::to_string(wrong) + " mismatches"});
    }
    {
        const Map2D grid = grid_map();
        ClassifyConfig cfg;
        std::size_t wrong = 0;
        for (std::int64_t n = -50; n <= 50; ++n) {
            const auto orbit = iterate_orbit(grid, Point2(static_cast<double>(n), 0.0), 5);
            for (std::size_t k = 0; k < orbit.states.size(); ++k) {
                wrong += orbit.states[k] == Point2(static_cast<double>(n) + static_cast<double>(k), 0.0) ? 0 : 1;
            }
            wrong += classify_numeric(grid, Point2(static_cast<double>(n), 0.0), cfg, Evidence::Drop).escaping() ? 0 : 1;
        }
        rep.checks.push_back({"grid: (n,0), |n| <= 50, move right one step at a time and escape", wrong == 0,
                              std::to_string(wrong) + " mismatches"});
        std::uniform_real_distribution<double> ux(-50.0, 50.0);
        std::uniform_real_distribution<double> uy(-3.0, 3.0);
        std::size_t not_fixed = 0;
        for (int i = 0; i < 1000; ++i) {
            const Point2 p(ux(rng), uy(rng));
            not_fixed += classify_numeric(grid, p, cfg, Evidence::Drop).fixed() ? 0 : 1;
        }
        rep.checks.push_back({"grid: 1000 random points off the lattice become fixed", not_fixed == 0,
                              std::to_string(not_fixed) + " not fixed"});
    }
    return rep;
}

VerifyReport thm12_suite() {
    VerifyReport rep{"thm12", {}};
    ClassifyConfig cfg;
    const auto sectors = raster_classify("sectors", {-20.0, 20.0, -20.0, 20.0}, 256, 256, cfg);
    const auto s = check_necessary_condition(label_components(sectors), 2.0);
    rep.checks.push_back({"sectors on [-20,20]^2, r = 2", s.verdict == NecessaryVerdict::Consistent,
                          std::string("verdict ") + to_string(s.verdict)});
    const auto chain = disc_chain_raster(disc_chain_window(), 840, 80);
    const auto c = check_necessary_condition(label_components(chain), 2.0);
    rep.checks.push_back({"disc chain D(n, 1/4), r = 2", c.verdict == NecessaryVerdict::ViolatedInWindow,
                          std::string("verdict ") + to_string(c.verdict)});
    return rep;
}

} // namespace

VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    if (suite == "kdl") {
        return kdl_suite(rng);
    }
    if (suite == "iab") {
        return iab_suite();
    }
    if (suite == "continuity") {
        return continuity_suite();
    }
    if (suite == "dichotomy") {
        return dichotomy_suite(rng);
    }
    if (suite == "thm12") {
        return thm12_suite();
    }
    throw ContractError("unknown verify suite '" + suite + "'");
}

} // namespace escset

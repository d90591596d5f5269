// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "escset/analysis.hpp"
#include "escset/builder.hpp"
#include "escset/family.hpp"
#include "escset/itinerary.hpp"
#include "escset/pl_map.hpp"
#include "escset/sectors.hpp"
#include "escset/snake.hpp"
#include "escset/staircase.hpp"

using namespace escset;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

ExactScalar q(std::int64_t n, std::int64_t d = 1) { return {n, d}; }

ExactScalar random_between(std::mt19937_64& rng, const ExactScalar& lo, const ExactScalar& hi, std::int64_t grain) {
    std::uniform_int_distribution<std::int64_t> u(0, grain);
    return lo + (hi - lo) * q(u(rng), grain);
}

Outcome staircase_dichotomy() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::int64_t> den(1, 50);
    std::size_t undetermined = 0;
    std::size_t bad_fixed = 0;
    std::size_t escaping = 0;
    std::size_t fixed = 0;
    for (int i = 0; i < 10000; ++i) {
        const std::int64_t d = den(rng);
        std::uniform_int_distribution<std::int64_t> num(0, 10 * d);
        const auto v = classify_staircase(q(num(rng), d), 1000);
        if (v.escaping()) {
            ++escaping;
        } else if (v.fixed()) {
            ++fixed;
            bad_fixed += (q(2) * v.as_fixed().point).is_integer() ? 0 : 1;
        } else {
            ++undetermined;
        }
    }
    std::size_t stated_wrong = 0;
    for (std::int64_t n = 1; n <= 10; ++n) {
        for (const auto& x : {q(4 * n - 1, 4), q(4 * n + 1, 4)}) {
            stated_wrong += classify_staircase(x, 1000).escaping() ? 0 : 1;
        }
        for (const auto& x : {q(n), q(2 * n + 1, 2)}) {
            const auto v = classify_staircase(x, 1000);
            stated_wrong += v.fixed() && v.as_fixed().point == x ? 0 : 1;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream d;
    d << escaping << " escaping, " << fixed << " fixed, " << undetermined << " undetermined, " << bad_fixed
      << " fixed points off Z/2, " << stated_wrong << " stated points wrong, " << secs << " s";
    return {undetermined == 0 && bad_fixed == 0 && stated_wrong == 0 && secs < 10.0, d.str()};
}

Outcome density_proxy() {
    std::mt19937_64 rng(102);
    std::size_t failures = 0;
    std::size_t max_steps = 0;
    for (int i = 0; i < 100; ++i) {
        const ExactScalar lo = random_between(rng, q(0), q(10) - q(1, 1000), 1000000);
        const RatInterval delta(lo, lo + q(1, 1000));
        try {
            const auto probe = staircase_density_probe(delta);
            const bool ok = probe.image.length() > q(1, 2) && probe.image.contains(probe.escaping_point)
                         && probe.image.contains(probe.fixed_point)
                         && classify_staircase(probe.escaping_point, 1000).escaping()
                         && classify_staircase(probe.fixed_point, 1000).fixed()
                         && pl_image_interval(staircase_map(), delta, probe.steps).contains(probe.image);
            failures += ok ? 0 : 1;
            max_steps = std::max(max_steps, probe.steps);
        } catch (const std::exception&) {
            ++failures;
        }
    }
    return {failures == 0, std::to_string(failures) + " failures in 100 intervals, at most "
                               + std::to_string(max_steps) + " image steps"};
}

Outcome covering_soundness() {
    std::mt19937_64 rng(103);
    const auto& f = staircase_map();
    std::uniform_int_distribution<int> depth_dist(1, 8);
    std::uniform_int_distribution<std::size_t> hop_dist(1, 2);
    std::size_t failures = 0;
    std::size_t total_depth = 0;
    for (int i = 0; i < 100; ++i) {
        const int depth = depth_dist(rng);
        const ExactScalar lo = random_between(rng, q(1), q(8), 1000);
        std::vector<RatInterval> es{RatInterval(lo, lo + q(1, 2))};
        std::vector<std::size_t> hops;
        for (int k = 0; k < depth; ++k) {
            const std::size_t n = hop_dist(rng);
            const RatInterval img = pl_image_interval(f, es.back(), n);
            const ExactScalar a = random_between(rng, img.lo(), img.lo() + img.length() / q(2), 1000);
            es.emplace_back(a, a + img.length() / q(3));
            hops.push_back(n);
        }
        try {
            const auto w = itinerary_witness(f, es, hops);
            const bool ok = follows_itinerary(f, w.witness, es, hops) && w.certified_depth == hops.size();
            failures += ok ? 0 : 1;
        } catch (const std::exception&) {
            ++failures;
        }
        total_depth += hops.size();
    }
    return {failures == 0,
            std::to_string(failures) + " failures in 100 sequences (" + std::to_string(total_depth) + " steps in total)"};
}

Outcome family_witnesses() {
    const ExactScalar center = q(5, 4);
    const ExactScalar radius = q(1, 10);
    if (!classify_staircase(center, 1000).escaping()) {
        return {false, "center 5/4 does not escape"};
    }
    const auto fam = escaping_family_near(staircase_map(), center, radius, 5, 1000);
    const std::set<ExactScalar> distinct(fam.points.begin(), fam.points.end());
    std::size_t not_escaping = 0;
    std::size_t outside = 0;
    for (const auto& p : fam.points) {
        not_escaping += classify_staircase(p, 1000).escaping() ? 0 : 1;
        outside += (p - center).abs() <= radius ? 0 : 1;
    }
    std::ostringstream d;
    d << distinct.size() << " distinct of " << fam.points.size() << ", " << not_escaping << " not escaping, " << outside
      << " outside [5/4 - 1/10, 5/4 + 1/10], pulled back " << fam.pull_steps << " steps";
    return {distinct.size() == 32 && not_escaping == 0 && outside == 0, d.str()};
}

Outcome grid_complementarity() {
    const Window w{-0.2, 10.2, -1.0, 1.0};
    const std::size_t cols = 256;
    const std::size_t rows = 64;
    const ClassifyConfig cfg;
    const auto grid = raster_classify("grid", w, cols, rows, cfg);
    const auto comp = raster_classify("grid-complement", w, cols, rows, cfg);
    // Cells are half-open: [x_k, x_k + h) horizontally and (y_j - h', y_j] vertically from the top.
    std::set<std::size_t> lattice_cells;
    for (int n = 0; n <= 10; ++n) {
        const double fx = (n - w.x_min) / (w.x_max - w.x_min) * double(cols);
        const double fy = (w.y_max - 0.0) / (w.y_max - w.y_min) * double(rows);
        lattice_cells.insert(static_cast<std::size_t>(fy) * cols + static_cast<std::size_t>(fx));
    }
    std::size_t mismatches = 0;
    std::size_t complement_escaping = 0;
    std::size_t undetermined = 0;
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
        if (grid.cells[i] == VerdictKind::Undetermined || comp.cells[i] == VerdictKind::Undetermined) {
            ++undetermined;
            continue;
        }
        const bool on_lattice = lattice_cells.count(i) != 0;
        mismatches += (grid.cells[i] == VerdictKind::EscapingToBudget) == on_lattice ? 0 : 1;
        if (on_lattice && comp.cells[i] == VerdictKind::EscapingToBudget) {
            ++complement_escaping;
        }
    }
    const double undetermined_share = double(undetermined) / double(grid.cells.size());
    std::ostringstream d;
    d << grid.count(VerdictKind::EscapingToBudget) << " escaping grid cells for " << lattice_cells.size()
      << " lattice cells, " << mismatches << " mismatches, " << complement_escaping
      << " lattice cells escaping for grid-complement, " << undetermined << " undetermined";
    return {mismatches == 0 && complement_escaping == 0 && undetermined_share < 0.01, d.str()};
}

Outcome sector_spine() {
    const auto params = SectorParams::defaults();
    const Map2D f = sectors_map(params);
    double worst = 0.0;
    for (std::int64_t n = 1; n <= 30; ++n) {
        const Point2 next = from_polar(params.spine(n + 1));
        worst = std::max(worst, distance(f.apply(from_polar(params.spine(n))), next));
    }
    const double top = 1.0 / (1.0 + params.epsilon);
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> sector(1, 20);
    std::size_t late = 0;
    std::size_t max_iter = 0;
    for (int i = 0; i < 1000; ++i) {
        std::int64_t n = sector(rng);
        const double a = std::max(unit(rng), 1e-9);
        const double b = std::clamp(unit(rng), 1e-9, 1.0 - 1e-9);
        PolarPoint p{a * params.rho(n), params.phi(n) + b * (params.phi_prime(n) - params.phi(n))};
        std::size_t k = 0;
        bool joined = false;
        while (k < 60) {
            p = to_polar(f.apply(from_polar(p)));
            ++k;
            ++n;
            if (std::fabs(p.r / params.rho(n) - top) <= 1e-9) {
                joined = true;
                break;
            }
        }
        late += joined ? 0 : 1;
        max_iter = std::max(max_iter, k);
    }
    std::ostringstream d;
    d << "max spine error " << worst << ", " << late << " of 1000 points did not join within 60 steps (max "
      << max_iter << ")";
    return {worst <= 1e-12 && late == 0, d.str()};
}

Outcome snake_inequalities() {
    std::mt19937_64 rng(107);
    std::size_t kdl_bad = 0;
    for (std::int64_t n = 0; n <= 20; ++n) {
        std::uniform_real_distribution<double> u(double(n), double(n + 2));
        const double bound = 4.0 * snake_A(n);
        for (int i = 0; i < 100000; ++i) {
            const double s = u(rng);
            const double t = u(rng);
            if (s != t && !(distance(snake_gamma(s), snake_gamma(t)) < bound * std::fabs(s - t))) {
                ++kdl_bad;
            }
        }
    }
    std::size_t iab_bad = 0;
    for (std::int64_t n = 1; n <= 1000; ++n) {
        std::uniform_real_distribution<double> u(double(n), double(n + 1));
        for (int i = 0; i < 1000; ++i) {
            const double t = u(rng);
            iab_bad += std::fabs(snake_beta(t) - (t + 1.0)) <= 1.0 / double(n) ? 0 : 1;
        }
    }
    double vertex_err = 0.0;
    for (int n = 1; n <= 15; ++n) {
        vertex_err = std::max(vertex_err, distance(snake_step(snake_gamma(2.0 * n + 1.0)), snake_gamma(2.0 * n + 3.0)));
    }
    std::ostringstream d;
    d << kdl_bad << " kdl violations, " << iab_bad << " iab violations, max vertex error " << vertex_err;
    return {kdl_bad == 0 && iab_bad == 0 && vertex_err <= 1e-10, d.str()};
}

Outcome snake_fate_dichotomy() {
    std::mt19937_64 rng(108);
    std::uniform_real_distribution<double> uy(0.0, 1.0);
    std::uniform_real_distribution<double> ue(-1.0, 1.0);
    std::uniform_real_distribution<double> ut(0.0, 40.0);
    const ClassifyConfig cfg{1000, 50.0, 10};
    std::size_t u_escaping = 0;
    std::size_t u_spine = 0;
    double u_max_norm = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double y = uy(rng);
        double eta = ue(rng);
        while (!(y > 0.0) || !(std::fabs(eta) < 1.0)) {
            y = uy(rng);
            eta = ue(rng);
        }
        const Point2 p = from_u({eta, y});
        const auto v = classify_numeric(snake_map(), p, cfg, Evidence::Keep);
        u_escaping += v.escaping() ? 1 : 0;
        for (const auto& s : v.evidence) {
            u_max_norm = std::max(u_max_norm, s.norm());
        }
        u_spine += snake_fate(p).fate == SnakeFate::Spine ? 1 : 0;
    }
    std::size_t flank_escaping = 0;
    std::size_t flank_fate = 0;
    std::size_t flank_points = 0;
    while (flank_points < 1000) {
        const double t = ut(rng);
        const Point2 p = flank_points % 2 == 0 ? snake_gamma_left(t) : snake_gamma_right(t);
        if (!(p.y() < 1.0)) {
            continue;
        }
        ++flank_points;
        flank_escaping += classify_numeric(snake_map(), p, cfg, Evidence::Drop).escaping() ? 1 : 0;
        flank_fate += snake_fate(p).fate == SnakeFate::Flank ? 1 : 0;
    }
    std::ostringstream d;
    d << u_escaping << " of 1000 U points EscapingToBudget (largest |x| seen " << u_max_norm
      << "; the spine only reaches |x| ~ A_n ~ ln n before heights fall below double resolution), "
      << flank_escaping << " of 1000 flank points escaping; supplementary fate certificate: " << u_spine
      << "/1000 U points land on the spine, " << flank_fate << "/1000 flank points stay on a flank";
    return {u_escaping == 1000 && flank_escaping == 0, d.str()};
}

Outcome builder_half_strip() {
    const auto region = half_strip_region();
    const auto r = raster_classify(build_thm11_map(region), region.view, 200, 200, ClassifyConfig{});
    std::size_t disagreements = 0;
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
        if (r.cells[i] == VerdictKind::Undetermined) {
            continue;
        }
        const bool member = region.membership(r.points[i]).kind == MembershipKind::InMainComponent;
        disagreements += (r.cells[i] == VerdictKind::EscapingToBudget) == member ? 0 : 1;
    }
    const auto spec = extension_for(region);
    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> ux(region.view.x_min, region.view.x_max);
    std::uniform_real_distribution<double> uy(region.view.y_min, region.view.y_max);
    std::size_t sign_bad = 0;
    for (int i = 0; i < 10000; ++i) {
        Point2 p(ux(rng), uy(rng));
        if (i % 10 == 0) {
            p = Point2(std::fabs(p.x()), 0.0);
        }
        const double psi = tietze_psi(spec, p, 64);
        const auto t = region.gamma_inverse(p);
        const bool in_u = region.membership(p).kind == MembershipKind::InMainComponent;
        if (t) {
            sign_bad += std::fabs(psi - *t) <= 1e-9 ? 0 : 1;
        } else if (in_u) {
            sign_bad += psi > 0.0 ? 0 : 1;
        } else {
            sign_bad += std::fabs(psi) <= 1e-9 ? 0 : 1;
        }
    }
    std::ostringstream d;
    d << disagreements << " raster disagreements (" << r.undetermined() << " undetermined), " << sign_bad
      << " of 10000 probes violate the psi sign pattern";
    return {disagreements == 0 && sign_bad == 0, d.str()};
}

Outcome necessary_condition_fixtures() {
    const auto sectors = raster_classify("sectors", {-20.0, 20.0, -20.0, 20.0}, 256, 256, ClassifyConfig{});
    const auto s = check_necessary_condition(label_components(sectors), 2.0);
    const auto chain = disc_chain_raster(disc_chain_window(), 840, 80);
    const auto c = check_necessary_condition(label_components(chain), 2.0);
    std::ostringstream d;
    d << "sectors: " << to_string(s.verdict) << ", disc chain: " << to_string(c.verdict);
    return {s.verdict == NecessaryVerdict::Consistent && c.verdict == NecessaryVerdict::ViolatedInWindow, d.str()};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"staircase dichotomy", staircase_dichotomy},
        {"density proxy", density_proxy},
        {"covering itinerary soundness", covering_soundness},
        {"escaping family witnesses", family_witnesses},
        {"grid / grid-complement complementarity", grid_complementarity},
        {"sector spine", sector_spine},
        {"snake inequalities", snake_inequalities},
        {"snake fate dichotomy", snake_fate_dichotomy},
        {"half-strip builder", builder_half_strip},
        {"necessary-condition fixtures", necessary_condition_fixtures},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.passed ? 0 : 1;
        std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first
                  << "): " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}

#include "escset/staircase.hpp"

#include <algorithm>

namespace escset {

namespace {

ExactScalar q(std::int64_t n, std::int64_t d = 1) { return {n, d}; }

PLMap1D build_staircase() {
    // One fundamental interval [3/4, 7/4), i.e. n = 1; the periodic tail
    // rule supplies every other n.
    std::vector<AffinePiece> pieces{
        {q(3, 4), q(-3), q(4)},  // 4n - 3x
        {q(1), q(5), q(-4)},     // 5x - 4n
        {q(5, 4), q(-3), q(6)},  // 4n + 2 - 3x
        {q(3, 2), q(5), q(-6)},  // 5x - 4n - 2
    };
    PLMap1D map("staircase", Affine{q(1), q(1)}, std::move(pieces), true);

    // Spot-check the tail rule on a few exact points.
    for (const auto& x : {q(3, 4), q(9, 10), q(13, 8), q(7, 3)}) {
        if (map.apply(x + q(1)) != map.apply(x) + q(1)) {
            throw ContractError("staircase map violates f(x+1) = f(x) + 1");
        }
    }
    return map;
}

bool is_integral(const ExactScalar& x) { return x.is_integer(); }

} // namespace

const PLMap1D& staircase_map() {
    static const PLMap1D map = build_staircase();
    return map;
}

ExactScalar ceil(const ExactScalar& x) { return -((-x).floor()); }

bool has_monotone_lattice_certificate(const PLMap1D& map) {
    if (!map.displacement_nonnegative()) {
        return false;
    }
    if (!is_integral(map.head().slope) || !is_integral(map.head().intercept)) {
        return false;
    }
    return std::all_of(map.pieces().begin(), map.pieces().end(),
                       [](const AffinePiece& p) { return is_integral(p.slope) && is_integral(p.intercept); });
}

EscapeVerdict<ExactScalar> classify_exact(const PLMap1D& map, const ExactScalar& x, const ClassifyConfig& cfg) {
    if (!has_monotone_lattice_certificate(map)) {
        return classify_numeric(map, x, cfg);
    }
    cfg.validate();
    EscapeVerdict<ExactScalar> verdict{Undetermined{}, {x}, {}};
    ExactScalar state = x;
    for (std::size_t k = 0; k < cfg.max_iterations; ++k) {
        ExactScalar next = map.apply(state);
        verdict.evidence.push_back(next);
        if (next == state) {
            verdict.outcome = EventuallyFixed<ExactScalar>{state, k};
            verdict.certificate = "exact fixed point f(p) = p";
            return verdict;
        }
        state = std::move(next);
    }
    const std::size_t window = std::min(cfg.tail_window, verdict.evidence.size());
    double radius = state_norm(verdict.evidence.back());
    for (std::size_t i = verdict.evidence.size() - window; i < verdict.evidence.size(); ++i) {
        radius = std::min(radius, state_norm(verdict.evidence[i]));
    }
    verdict.outcome = EscapingToBudget{cfg.max_iterations, radius};
    verdict.certificate = "orbit nondecreasing (f(x) >= x) and confined to (1/" + x.denominator_string()
                        + ")Z; not fixed within the budget, so each step adds at least 1/"
                        + x.denominator_string() + " for as long as it stays unfixed";
    return verdict;
}

EscapeVerdict<ExactScalar> classify_staircase(const ExactScalar& x, std::size_t budget) {
    ClassifyConfig cfg;
    cfg.max_iterations = budget;
    cfg.tail_window = std::min<std::size_t>(cfg.tail_window, budget);
    return classify_exact(staircase_map(), x, cfg);
}

DensityProbe staircase_density_probe(const RatInterval& delta, std::size_t max_steps) {
    const auto& f = staircase_map();
    const ExactScalar three_quarters(3, 4);
    const ExactScalar half(1, 2);
    const ExactScalar four(4);
    RatInterval image = delta;
    for (std::size_t n = 0; n <= max_steps; ++n) {
        if (three_quarters < image.lo() && half < image.length()) {
            DensityProbe probe;
            probe.steps = n;
            probe.image = image;
            bool have_escaping = false;
            bool have_fixed = false;
            // Quarter lattice inside the image: odd quarters are n +- 1/4,
            // even quarters are n or n + 1/2.
            for (ExactScalar k = ceil(image.lo() * four); k <= image.hi() * four; k += ExactScalar(1)) {
                const ExactScalar p = k / four;
                const bool odd = !(k / ExactScalar(2)).is_integer();
                if (odd && !have_escaping && classify_staircase(p, 16).escaping()) {
                    probe.escaping_point = p;
                    have_escaping = true;
                } else if (!odd && !have_fixed && classify_staircase(p, 16).fixed()) {
                    probe.fixed_point = p;
                    have_fixed = true;
                }
                if (have_escaping && have_fixed) {
                    return probe;
                }
            }
            throw ContractError("density probe: expanded image " + image.to_string() + " lacks a lattice witness");
        }
        image = pl_image_interval(f, image);
    }
    throw ContractError("density probe: interval did not expand within " + std::to_string(max_steps) + " steps");
}

} // namespace escset

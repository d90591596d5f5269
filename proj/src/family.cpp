#include "escset/family.hpp"

#include "escset/staircase.hpp"

#include <algorithm>

namespace escset {

namespace {

constexpr std::size_t kMaxOffset = 32;
constexpr std::size_t kMaxPeriod = 16;
constexpr std::size_t kTailIntervals = 2;

ExactScalar iterate(const PLMap1D& map, ExactScalar x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        x = map.apply(x);
    }
    return x;
}

void require_escaping_seed(const PLMap1D& map, const ExactScalar& seed) {
    ClassifyConfig cfg;
    cfg.max_iterations = 200;
    cfg.tail_window = 10;
    if (!classify_exact(map, seed, cfg).escaping()) {
        throw ContractError("escaping family: seed " + seed.to_string() + " does not escape to budget");
    }
}

// Candidate points of a component: its midpoint, then p/q fractions of it.
std::vector<ExactScalar> candidates(const RatInterval& iv) {
    std::vector<ExactScalar> out{iv.midpoint()};
    if (iv.lo() == iv.hi()) {
        return out;
    }
    for (std::int64_t q = 3; q <= 16; ++q) {
        for (std::int64_t p = 1; p < q; ++p) {
            out.push_back(iv.lo() + iv.length() * ExactScalar(p, q));
        }
    }
    return out;
}

std::vector<std::vector<bool>> all_words(std::size_t depth) {
    std::vector<std::vector<bool>> words;
    const std::size_t count = std::size_t{1} << depth;
    for (std::size_t w = 0; w < count; ++w) {
        std::vector<bool> bits(depth);
        for (std::size_t i = 0; i < depth; ++i) {
            bits[i] = ((w >> (depth - 1 - i)) & 1U) != 0;
        }
        words.push_back(std::move(bits));
    }
    return words;
}

} // namespace

FamilyPlan plan_escaping_family(const PLMap1D& map, const ExactScalar& seed, std::size_t depth, std::size_t start,
                                std::size_t scan) {
    require_escaping_seed(map, seed);
    FamilyPlan plan;
    const auto orbit = iterate_orbit(map, seed, kMaxOffset + kMaxPeriod).states;
    bool found = false;
    for (std::size_t a = 0; a < kMaxOffset && !found; ++a) {
        for (std::size_t m = 1; m <= kMaxPeriod && !found; ++m) {
            if (orbit[a] < orbit[a + m]) {
                plan.offset = a;
                plan.period = m;
                found = true;
            }
        }
    }
    if (!found) {
        throw ContractError("escaping family: no increasing pair f^a(x) < f^(a+m)(x) in the scanned range");
    }
    plan.base = orbit[plan.offset];
    plan.start = start;

    const std::size_t limit = start + scan;
    plan.g_orbit.push_back(plan.base);
    auto extend_to = [&](std::size_t k) {
        while (plan.g_orbit.size() <= k) {
            auto next = iterate(map, plan.g_orbit.back(), plan.period);
            if (!(plan.g_orbit.back() < next)) {
                throw ContractError("escaping family: g-orbit of the seed stops increasing at index "
                                    + std::to_string(plan.g_orbit.size() - 1));
            }
            plan.g_orbit.push_back(std::move(next));
        }
    };

    std::size_t k = start;
    while (plan.splits.size() < depth) {
        if (k > limit) {
            throw ContractError("escaping family: no fixed point of g found in D_" + std::to_string(start) + " .. D_"
                                + std::to_string(limit) + "; try a larger scan");
        }
        extend_to(k + 1);
        const auto d = plan.d(k);
        const auto fixed = fixed_points_in(map, plan.period, d);
        auto it = std::find_if(fixed.begin(), fixed.end(), [&](const ExactScalar& t) { return t < d.hi(); });
        if (it != fixed.end()) {
            plan.splits.push_back({k, *it});
            k += 2;
        } else {
            ++k;
        }
    }
    const std::size_t last = plan.splits.empty() ? start : plan.splits.back().k + 1;
    extend_to(last + kTailIntervals + 1);
    return plan;
}

std::vector<RatInterval> family_schedule(const FamilyPlan& plan, const std::vector<bool>& bits) {
    if (bits.size() != plan.splits.size()) {
        throw ContractError("family_schedule: word length differs from the plan depth");
    }
    std::vector<RatInterval> e;
    std::size_t q = plan.start;
    e.push_back(plan.d(q));
    for (std::size_t j = 0; j < bits.size(); ++j) {
        const auto& split = plan.splits[j];
        for (std::size_t k = q + 1; k <= split.k; ++k) {
            e.push_back(plan.d(k));
        }
        if (!bits[j]) {
            e.emplace_back(split.t, plan.g_orbit.at(split.k + 1));
        }
        e.push_back(plan.d(split.k + 1));
        q = split.k + 1;
    }
    for (std::size_t i = 1; i <= kTailIntervals; ++i) {
        e.push_back(plan.d(q + i));
    }
    return e;
}

std::vector<FamilyMember> escaping_family_members(const PLMap1D& map, const FamilyPlan& plan, std::size_t budget) {
    ClassifyConfig cfg;
    cfg.max_iterations = budget;
    cfg.tail_window = std::min<std::size_t>(cfg.tail_window, budget);

    std::vector<FamilyMember> members;
    for (auto& bits : all_words(plan.splits.size())) {
        FamilyMember member;
        member.bits = std::move(bits);
        member.schedule = family_schedule(plan, member.bits);
        const std::vector<std::size_t> hops(member.schedule.size() - 1, plan.period);
        const auto refined = itinerary_witness(map, member.schedule, hops);

        bool chosen = false;
        for (const auto& component : refined.refinement) {
            for (const auto& p : candidates(component)) {
                const bool fresh = std::none_of(members.begin(), members.end(),
                                                [&](const FamilyMember& m) { return m.point == p; });
                if (fresh && follows_itinerary(map, p, member.schedule, hops) && classify_exact(map, p, cfg).escaping()) {
                    member.point = p;
                    chosen = true;
                    break;
                }
            }
            if (chosen) {
                break;
            }
        }
        if (!chosen) {
            throw ContractError("escaping family: no escaping witness found for a binary word");
        }
        members.push_back(std::move(member));
    }
    return members;
}

std::vector<ExactScalar> escaping_family(const PLMap1D& map, std::size_t depth, const ExactScalar& seed,
                                         std::size_t budget) {
    const auto plan = plan_escaping_family(map, seed, depth);
    std::vector<ExactScalar> out;
    for (auto& m : escaping_family_members(map, plan, budget)) {
        out.push_back(std::move(m.point));
    }
    return out;
}

NearFamily escaping_family_near(const PLMap1D& map, const ExactScalar& center, const ExactScalar& radius,
                                std::size_t depth, std::size_t budget, std::size_t max_pull) {
    if (radius.sign() <= 0) {
        throw ContractError("escaping_family_near: radius must be positive");
    }
    const auto probe = plan_escaping_family(map, center, 0);
    std::vector<RatInterval> windows{RatInterval(center - radius, center + radius)};

    NearFamily out;
    bool found = false;
    for (std::size_t n = 0; n <= max_pull && !found; ++n) {
        if (n > 0) {
            windows.push_back(pl_image_interval(map, windows.back()));
        }
        const auto& image = windows.back();
        // g-orbit values increase, so once D_k starts beyond the image no later one fits.
        auto g = probe.g_orbit.front();
        for (std::size_t k = 0;; ++k) {
            auto next = iterate(map, g, probe.period);
            if (image.hi() < next) {
                break;
            }
            if (image.contains(RatInterval(g, next))) {
                out.pull_steps = n;
                out.d_index = k;
                found = true;
                break;
            }
            g = std::move(next);
        }
    }
    if (!found) {
        throw ContractError("escaping_family_near: no D_k inside f^N of the neighborhood for N <= "
                            + std::to_string(max_pull));
    }

    out.plan = plan_escaping_family(map, center, depth, out.d_index);
    ClassifyConfig cfg;
    cfg.max_iterations = budget;
    cfg.tail_window = std::min<std::size_t>(cfg.tail_window, budget);
    for (const auto& member : escaping_family_members(map, out.plan, budget)) {
        ExactScalar z = member.point;
        for (std::size_t j = out.pull_steps; j-- > 0;) {
            const auto pre = pl_preimage_interval(map, RatInterval::point(z), windows[j]);
            if (pre.empty()) {
                throw ContractError("escaping_family_near: empty preimage during pullback");
            }
            z = pre.front().lo();
        }
        if (iterate(map, z, out.pull_steps) != member.point || !classify_exact(map, z, cfg).escaping()) {
            throw ContractError("escaping_family_near: pulled-back point failed verification");
        }
        out.points.push_back(std::move(z));
    }
    return out;
}

} // namespace escset

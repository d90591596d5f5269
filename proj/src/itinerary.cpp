#include "escset/itinerary.hpp"

#include "escset/dynamics.hpp"

#include <algorithm>
#include <numeric>

namespace escset {

CoveringFamily covering_intervals(const PLMap1D& map, const ExactScalar& x, std::size_t horizon) {
    CoveringFamily fam;
    fam.horizon = horizon;
    fam.orbit = iterate_orbit(map, x, horizon).states;

    std::vector<std::size_t> order(fam.orbit.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fam.orbit[a] < fam.orbit[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (fam.orbit[order[i - 1]] == fam.orbit[order[i]]) {
            throw ContractError("covering_intervals: iterates " + std::to_string(order[i - 1]) + " and "
                                + std::to_string(order[i]) + " coincide; the seed is preperiodic");
        }
    }

    // rank[k] = position of f^k(x) in sorted order.
    std::vector<std::size_t> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        rank[order[i]] = i;
    }
    for (std::size_t k = 0; k <= horizon; ++k) {
        const auto r = rank[k];
        if (r + 1 < order.size()) {
            fam.intervals.push_back({fam.orbit[k], fam.orbit[order[r + 1]], CoverSign::Plus, k});
        } else {
            fam.open_above.push_back(k);
        }
        if (r > 0) {
            fam.intervals.push_back({fam.orbit[order[r - 1]], fam.orbit[k], CoverSign::Minus, k});
        } else {
            fam.intervals.push_back({std::nullopt, fam.orbit[k], CoverSign::Minus, k});
        }
    }
    return fam;
}

void check_covering(const PLMap1D& map, const std::vector<RatInterval>& prescribed, const std::vector<std::size_t>& hops) {
    if (prescribed.empty() || hops.size() + 1 != prescribed.size()) {
        throw ContractError("itinerary needs K+1 intervals and K hops");
    }
    for (std::size_t k = 0; k < hops.size(); ++k) {
        if (hops[k] == 0) {
            throw ContractError("itinerary hops must be positive");
        }
        const auto image = pl_image_interval(map, prescribed[k], hops[k]);
        if (!image.contains(prescribed[k + 1])) {
            throw CoveringConditionError(k, "covering condition fails at k=" + std::to_string(k) + ": E_"
                                                + std::to_string(k + 1) + " = " + prescribed[k + 1].to_string()
                                                + " is not inside f^" + std::to_string(hops[k]) + "(E_"
                                                + std::to_string(k) + ") = " + image.to_string());
        }
    }
}

bool follows_itinerary(const PLMap1D& map, const ExactScalar& y, const std::vector<RatInterval>& prescribed,
                       const std::vector<std::size_t>& hops) {
    if (prescribed.empty() || !prescribed.front().contains(y)) {
        return false;
    }
    ExactScalar state = y;
    for (std::size_t k = 0; k < hops.size() && k + 1 < prescribed.size(); ++k) {
        for (std::size_t i = 0; i < hops[k]; ++i) {
            state = map.apply(state);
        }
        if (!prescribed[k + 1].contains(state)) {
            return false;
        }
    }
    return true;
}

ItineraryWitness itinerary_witness(const PLMap1D& map, const std::vector<RatInterval>& prescribed,
                                   const std::vector<std::size_t>& hops, std::size_t component_cap) {
    check_covering(map, prescribed, hops);
    ItineraryWitness out;
    std::vector<RatInterval> set{prescribed.back()};
    for (std::size_t k = hops.size(); k-- > 0;) {
        // Windows E_k, f(E_k), ..., f^{n-1}(E_k) for the intermediate pullbacks.
        std::vector<RatInterval> windows{prescribed[k]};
        for (std::size_t j = 1; j < hops[k]; ++j) {
            windows.push_back(pl_image_interval(map, windows.back()));
        }
        for (std::size_t j = hops[k]; j-- > 0;) {
            set = pl_preimage_union(map, set, windows[j]);
            if (set.size() > component_cap) {
                set.erase(set.begin() + static_cast<std::ptrdiff_t>(component_cap), set.end());
                out.pruned = true;
            }
        }
        if (set.empty()) {
            // Unreachable when the covering condition holds.
            throw ContractError("itinerary refinement became empty at k=" + std::to_string(k));
        }
    }
    out.refinement = std::move(set);
    out.witness = out.refinement.front().midpoint();
    out.certified_depth = hops.size();
    if (!follows_itinerary(map, out.witness, prescribed, hops)) {
        throw ContractError("itinerary witness failed forward verification");
    }
    return out;
}

} // namespace escset

#pragma once

#include <cstddef>
#include <vector>

#include "escset/itinerary.hpp"
#include "escset/pl_map.hpp"

namespace escset {

/// Split point of the binary schedule: a fixed point t of g = f^m inside D_k.
struct FamilySplit {
    std::size_t k = 0;
    ExactScalar t;
};

/**
 * Data shared by every member of an escaping family.
 *
 * The seed x is replaced by f^offset(x) and g = f^period, so that
 * D_k = [g^k(x'), g^{k+1}(x')] is a chain of intervals marching to the right.
 */
struct FamilyPlan {
    std::size_t offset = 0;
    std::size_t period = 1;
    ExactScalar base;                ///< f^offset(seed)
    std::vector<ExactScalar> g_orbit; ///< g^0(base) .. g^{last}(base)
    std::size_t start = 0;            ///< first D index used (E_0 = D_start)
    std::vector<FamilySplit> splits;  ///< one per binary digit

    RatInterval d(std::size_t k) const { return {g_orbit.at(k), g_orbit.at(k + 1)}; }
};

struct FamilyMember {
    std::vector<bool> bits;
    std::vector<RatInterval> schedule; ///< E_0 .. E_K, consecutive ones one g-step apart
    ExactScalar point;
};

/**
 * Chooses the smallest (offset, period) pair, in lexicographic order, with
 * f^offset(seed) < f^{offset+period}(seed), and `depth` split points with
 * indices start <= k_0 < k_1 < ... where consecutive indices differ by at
 * least 2. Throws ContractError when no split is found within `scan` D
 * intervals or the seed orbit is not increasing along g.
 */
FamilyPlan plan_escaping_family(const PLMap1D& map, const ExactScalar& seed, std::size_t depth,
                                std::size_t start = 0, std::size_t scan = 256);

/// Interval schedule for one binary word (bit 0 takes the detour through [t_j, g^{k_j+1}]).
std::vector<RatInterval> family_schedule(const FamilyPlan& plan, const std::vector<bool>& bits);

/**
 * 2^depth pairwise-distinct points of D_start, one per binary word of length
 * `depth`, each following its schedule and each classified EscapingToBudget
 * with `budget` iterations. Throws ContractError if a word has no verified
 * escaping witness among the candidates tried.
 */
std::vector<FamilyMember> escaping_family_members(const PLMap1D& map, const FamilyPlan& plan, std::size_t budget);

std::vector<ExactScalar> escaping_family(const PLMap1D& map, std::size_t depth, const ExactScalar& seed,
                                         std::size_t budget);

struct NearFamily {
    std::size_t pull_steps = 0; ///< N with D_k inside f^N([c - r, c + r])
    std::size_t d_index = 0;    ///< that k
    FamilyPlan plan;
    std::vector<ExactScalar> points;
};

/**
 * Escaping family inside [center - radius, center + radius]: finds the
 * smallest N and then the smallest k with D_k inside f^N of the neighborhood,
 * builds the family on D_k and pulls every member back N steps into the
 * neighborhood through exact preimages.
 */
NearFamily escaping_family_near(const PLMap1D& map, const ExactScalar& center, const ExactScalar& radius,
                                std::size_t depth, std::size_t budget, std::size_t max_pull = 64);

} // namespace escset

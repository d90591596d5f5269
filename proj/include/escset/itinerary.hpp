#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "escset/errors.hpp"
#include "escset/pl_map.hpp"

namespace escset {

// ---------------------------------------------------------------------------
// Covering intervals built from one orbit

enum class CoverSign { Plus, Minus };

/// B_k^+ = [f^k(x), next larger orbit value] or B_k^- = [next smaller, f^k(x)].
/// A minus interval with no smaller orbit value is unbounded below.
struct CoveringInterval {
    std::optional<ExactScalar> lo; ///< empty when unbounded below
    ExactScalar hi;
    CoverSign sign = CoverSign::Plus;
    std::size_t anchor = 0;

    bool unbounded_below() const { return !lo.has_value(); }
    RatInterval bounded() const { return {lo.value(), hi}; }
};

struct CoveringFamily {
    /// Orbit prefix f^0(x) .. f^horizon(x) the intervals were computed from.
    std::size_t horizon = 0;
    std::vector<ExactScalar> orbit;
    std::vector<CoveringInterval> intervals;
    /// Anchors k whose f^k(x) is the largest value in the prefix, so B_k^+
    /// lies beyond what was computed and is omitted.
    std::vector<std::size_t> open_above;
};

/**
 * B_k^+ and B_k^- for 0 <= k <= horizon, with the minimum/maximum over all
 * iterates replaced by the computed prefix. Throws ContractError if two
 * iterates in the prefix coincide (the seed is preperiodic).
 */
CoveringFamily covering_intervals(const PLMap1D& map, const ExactScalar& x, std::size_t horizon);

// ---------------------------------------------------------------------------
// Prescribed itineraries

/// Thrown when E_{k+1} is not contained in f^{n_k}(E_k).
class CoveringConditionError : public ContractError {
public:
    CoveringConditionError(std::size_t index, const std::string& what) : ContractError(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

struct ItineraryWitness {
    ExactScalar witness;
    std::size_t certified_depth = 0;
    /// Components of the refined set {x in E_0 : f^{s_i}(x) in E_{i+1}, i < K}.
    std::vector<RatInterval> refinement;
    /// True when the component cap forced pruning, in which case
    /// `refinement` is a nonempty subset of the full set.
    bool pruned = false;
};

/// Verifies E_{k+1} subset f^{n_k}(E_k) for all k; throws CoveringConditionError.
void check_covering(const PLMap1D& map, const std::vector<RatInterval>& prescribed, const std::vector<std::size_t>& hops);

/**
 * Finds y in E_0 with f^{s_k}(y) in E_{k+1}, s_k = n_0 + ... + n_k, by exact
 * backward refinement. The witness is the midpoint of the first component of
 * the refined set and is checked by forward iteration before returning.
 * At most `component_cap` components are carried between levels.
 */
ItineraryWitness itinerary_witness(const PLMap1D& map, const std::vector<RatInterval>& prescribed,
                                   const std::vector<std::size_t>& hops, std::size_t component_cap = 256);

/// Forward check: f^{s_k}(y) in E_{k+1} for every k, and y in E_0.
bool follows_itinerary(const PLMap1D& map, const ExactScalar& y, const std::vector<RatInterval>& prescribed,
                       const std::vector<std::size_t>& hops);

} // namespace escset

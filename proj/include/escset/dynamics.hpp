#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <deque>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "escset/errors.hpp"
#include "escset/point.hpp"

namespace escset {

/// Anything with a state type, a pure step function and a stable name.
template <class M>
concept DynamicalMap = requires(const M& m, const typename M::State& s) {
    { m.apply(s) } -> std::same_as<typename M::State>;
    { m.name() } -> std::convertible_to<std::string>;
};

/// Finite orbit prefix f^0(start) .. f^N(start) of a named map.
template <class State>
struct Orbit {
    State start;
    std::vector<State> states;
    std::string map_id;
};

template <DynamicalMap M>
Orbit<typename M::State> iterate_orbit(const M& map, const typename M::State& start, std::size_t n) {
    Orbit<typename M::State> orbit{start, {}, std::string(map.name())};
    orbit.states.reserve(n + 1);
    orbit.states.push_back(start);
    for (std::size_t k = 0; k < n; ++k) {
        orbit.states.push_back(map.apply(orbit.states.back()));
    }
    return orbit;
}

/// True when states[k+1] == f(states[k]) for every k (exact or bitwise).
template <DynamicalMap M>
bool orbit_recomputes(const M& map, const Orbit<typename M::State>& orbit) {
    if (orbit.states.empty() || !state_equal(orbit.states.front(), orbit.start)) {
        return false;
    }
    for (std::size_t k = 0; k + 1 < orbit.states.size(); ++k) {
        if (!state_equal(map.apply(orbit.states[k]), orbit.states[k + 1])) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Verdicts

enum class VerdictKind { EventuallyFixed, EventuallyPeriodic, EscapingToBudget, BoundedToBudget, Undetermined };

const char* to_string(VerdictKind kind);

template <class State>
struct EventuallyFixed {
    State point;
    std::size_t preperiod = 0;
};

struct EventuallyPeriodic {
    std::size_t period = 0;
    std::size_t preperiod = 0;
};

struct EscapingToBudget {
    std::size_t budget = 0;
    double escape_radius = 0.0;
};

struct BoundedToBudget {
    std::size_t budget = 0;
    double bound = 0.0;
};

struct Undetermined {
    std::string reason;
};

template <class State>
struct EscapeVerdict {
    std::variant<EventuallyFixed<State>, EventuallyPeriodic, EscapingToBudget, BoundedToBudget, Undetermined> outcome;
    /// Orbit states backing the verdict: the prefix up to the fixed point or
    /// cycle, or the final window for budget verdicts.
    std::vector<State> evidence;
    /// Free-text description of any certificate the verdict relies on.
    std::string certificate;

    VerdictKind kind() const { return static_cast<VerdictKind>(outcome.index()); }
    bool escaping() const { return kind() == VerdictKind::EscapingToBudget; }
    bool fixed() const { return kind() == VerdictKind::EventuallyFixed; }
    const EventuallyFixed<State>& as_fixed() const { return std::get<EventuallyFixed<State>>(outcome); }
};

/// Finite-budget proxy for the limit in the definition of the escaping set.
struct ClassifyConfig {
    std::size_t max_iterations = 1000;
    double escape_radius = 100.0;
    /// Number of final iterates that must all lie at or beyond escape_radius.
    std::size_t tail_window = 10;

    void validate() const;
};

enum class Evidence { Keep, Drop };

namespace detail {

inline constexpr std::size_t kMaxDetectedPeriod = 8;

template <class M, class S>
bool trustworthy(const M& map, const S& s) {
    if constexpr (requires { { map.trustworthy(s) } -> std::convertible_to<bool>; }) {
        return map.trustworthy(s);
    } else {
        return true;
    }
}

} // namespace detail

/**
 * Classifies the orbit of `start` under `map` with a finite budget.
 *
 * EventuallyFixed / EventuallyPeriodic are issued only on exact (1D) or
 * bitwise (2D) repetition, so they are certificates. EscapingToBudget means
 * the last `tail_window` iterates all have norm >= escape_radius;
 * BoundedToBudget means they all stay below it; a mixed tail is Undetermined.
 * If the orbit leaves the range of a double, the verdict is computed on the
 * completed prefix and its budget records how far it got.
 */
template <DynamicalMap M>
EscapeVerdict<typename M::State> classify_numeric(const M& map, const typename M::State& start,
                                                  const ClassifyConfig& cfg, Evidence evidence = Evidence::Keep) {
    using State = typename M::State;
    cfg.validate();
    EscapeVerdict<State> verdict{Undetermined{}, {}, {}};

    const std::size_t ring = std::max(cfg.tail_window, detail::kMaxDetectedPeriod + 1);
    std::deque<State> recent{start};
    std::vector<State> full;
    const bool keep = evidence == Evidence::Keep;
    if (keep) {
        full.push_back(start);
    }
    double max_norm = state_norm(start);

    auto tail_evidence = [&](std::size_t from_end) {
        if (!keep) {
            return;
        }
        const std::size_t n = std::min(from_end, full.size());
        verdict.evidence.assign(full.end() - static_cast<std::ptrdiff_t>(n), full.end());
    };

    if (!detail::trustworthy(map, start)) {
        verdict.outcome = Undetermined{"start point outside the map's reliable precision range"};
        return verdict;
    }

    std::size_t done = 0;
    std::string stop_reason;
    for (std::size_t k = 0; k < cfg.max_iterations; ++k) {
        State next;
        try {
            next = map.apply(recent.back());
        } catch (const ResourceError& e) {
            stop_reason = e.what();
            break;
        }
        if (!detail::trustworthy(map, next)) {
            stop_reason = "precision exhausted at step " + std::to_string(k + 1);
            break;
        }
        ++done;
        if (state_equal(next, recent.back())) {
            verdict.outcome = EventuallyFixed<State>{recent.back(), k};
            if (keep) {
                verdict.evidence = full;
                verdict.evidence.push_back(next);
            }
            return verdict;
        }
        // Cycles of length 2..kMaxDetectedPeriod, compared against the ring.
        for (std::size_t p = 2; p <= detail::kMaxDetectedPeriod && p <= recent.size(); ++p) {
            if (state_equal(next, recent[recent.size() - p])) {
                verdict.outcome = EventuallyPeriodic{p, k + 1 - p};
                if (keep) {
                    verdict.evidence = full;
                    verdict.evidence.push_back(next);
                }
                return verdict;
            }
        }
        max_norm = std::max(max_norm, state_norm(next));
        recent.push_back(next);
        if (recent.size() > ring) {
            recent.pop_front();
        }
        if (keep) {
            full.push_back(next);
        }
    }

    if (done < cfg.tail_window) {
        verdict.outcome = Undetermined{stop_reason.empty() ? "orbit shorter than the tail window" : stop_reason};
        tail_evidence(full.size());
        return verdict;
    }
    bool all_out = true;
    bool all_in = true;
    for (std::size_t i = recent.size() - cfg.tail_window; i < recent.size(); ++i) {
        const double r = state_norm(recent[i]);
        all_out = all_out && r >= cfg.escape_radius;
        all_in = all_in && r < cfg.escape_radius;
    }
    tail_evidence(cfg.tail_window);
    if (!stop_reason.empty()) {
        verdict.certificate = "iteration stopped early: " + stop_reason;
    }
    if (all_out) {
        verdict.outcome = EscapingToBudget{done, cfg.escape_radius};
    } else if (all_in) {
        verdict.outcome = BoundedToBudget{done, max_norm};
    } else {
        verdict.outcome = Undetermined{stop_reason.empty() ? "tail straddles the escape radius" : stop_reason};
    }
    return verdict;
}

/// Compact one-line rendering, e.g. "EventuallyFixed p=2 steps=2".
std::string describe(const EscapeVerdict<ExactScalar>& v);
std::string describe(const EscapeVerdict<Point2>& v);

} // namespace escset

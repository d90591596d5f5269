#include "escset/dynamics.hpp"

#include "escset/format.hpp"

#include <array>
#include <charconv>

namespace escset {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string format_point(const Point2& p) { return format_double(p.x()) + "," + format_double(p.y()); }

const char* to_string(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::EventuallyFixed: return "EventuallyFixed";
    case VerdictKind::EventuallyPeriodic: return "EventuallyPeriodic";
    case VerdictKind::EscapingToBudget: return "EscapingToBudget";
    case VerdictKind::BoundedToBudget: return "BoundedToBudget";
    case VerdictKind::Undetermined: return "Undetermined";
    }
    return "?";
}

void ClassifyConfig::validate() const {
    if (max_iterations == 0) {
        throw ContractError("max_iterations must be positive");
    }
    if (tail_window == 0 || tail_window > max_iterations) {
        throw ContractError("tail_window must be in [1, max_iterations]");
    }
    if (!(escape_radius > 0.0)) {
        throw ContractError("escape_radius must be positive");
    }
}

namespace {

template <class State, class Fmt>
std::string describe_impl(const EscapeVerdict<State>& v, Fmt fmt) {
    std::string out = to_string(v.kind());
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, EventuallyFixed<State>>) {
                out += " p=" + fmt(o.point) + " steps=" + std::to_string(o.preperiod);
            } else if constexpr (std::is_same_v<T, EventuallyPeriodic>) {
                out += " period=" + std::to_string(o.period) + " steps=" + std::to_string(o.preperiod);
            } else if constexpr (std::is_same_v<T, EscapingToBudget>) {
                out += " budget=" + std::to_string(o.budget) + " radius=" + format_double(o.escape_radius);
            } else if constexpr (std::is_same_v<T, BoundedToBudget>) {
                out += " budget=" + std::to_string(o.budget) + " bound=" + format_double(o.bound);
            } else {
                out += " reason=\"" + o.reason + "\"";
            }
        },
        v.outcome);
    return out;
}

} // namespace

std::string describe(const EscapeVerdict<ExactScalar>& v) {
    return describe_impl(v, [](const ExactScalar& x) { return x.to_string(); });
}

std::string describe(const EscapeVerdict<Point2>& v) {
    return describe_impl(v, [](const Point2& p) { return "(" + format_point(p) + ")"; });
}

} // namespace escset

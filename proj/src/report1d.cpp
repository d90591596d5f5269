#include "escset/report1d.hpp"

#include "escset/format.hpp"
#include "escset/staircase.hpp"

#include <ostream>
#include <sstream>

namespace escset {

ClosednessReport complement_closedness_report(const PLMap1D& map, const RatInterval& window, std::size_t samples,
                                              std::size_t budget) {
    if (samples == 0 || budget == 0) {
        throw ContractError("complement_closedness_report: samples and budget must be positive");
    }
    ClosednessReport rep;
    rep.map_id = map.name();
    rep.window = window;
    rep.budget = budget;

    ClassifyConfig cfg;
    cfg.max_iterations = budget;
    cfg.tail_window = std::min<std::size_t>(cfg.tail_window, budget);
    const ExactScalar step = samples > 1 ? window.length() / ExactScalar(static_cast<std::int64_t>(samples - 1))
                                         : ExactScalar(0);
    for (std::size_t i = 0; i < samples; ++i) {
        ExactScalar x = window.lo() + step * ExactScalar(static_cast<std::int64_t>(i));
        const auto kind = classify_exact(map, x, cfg).kind();
        switch (kind) {
        case VerdictKind::EscapingToBudget: ++rep.escaping; break;
        case VerdictKind::EventuallyFixed: ++rep.fixed; break;
        default: ++rep.other; rep.non_escaping_all_fixed = false; break;
        }
        rep.samples.push_back({std::move(x), kind});
    }

    for (std::size_t i = 0; i < rep.samples.size();) {
        if (rep.samples[i].kind == VerdictKind::EscapingToBudget) {
            ++i;
            continue;
        }
        NonEscapingRun run;
        run.first = i;
        while (i < rep.samples.size() && rep.samples[i].kind != VerdictKind::EscapingToBudget) {
            ++i;
        }
        run.last = i - 1;
        if (run.first > 0) {
            run.left_flank = rep.samples[run.first - 1].kind;
        }
        if (i < rep.samples.size()) {
            run.right_flank = rep.samples[i].kind;
        }
        rep.runs.push_back(run);
    }
    return rep;
}

void write_orbit_csv(std::ostream& os, const Orbit<ExactScalar>& orbit) {
    os << "k,x\n";
    for (std::size_t k = 0; k < orbit.states.size(); ++k) {
        os << k << ',' << orbit.states[k].to_string() << '\n';
    }
}

void write_orbit_csv(std::ostream& os, const Orbit<Point2>& orbit) {
    os << "k,x,y\n";
    for (std::size_t k = 0; k < orbit.states.size(); ++k) {
        os << k << ',' << format_point(orbit.states[k]) << '\n';
    }
}

void write_report_csv(std::ostream& os, const ClosednessReport& report) {
    os << "index,x,verdict\n";
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
        os << i << ',' << report.samples[i].x.to_string() << ',' << to_string(report.samples[i].kind) << '\n';
    }
}

std::string summarize(const ClosednessReport& report) {
    std::ostringstream os;
    os << "map " << report.map_id << " window " << report.window.to_string() << " budget " << report.budget << " ("
       << ClosednessReport::kind_label << ")\n";
    os << "samples " << report.samples.size() << ": escaping " << report.escaping << ", fixed " << report.fixed
       << ", other " << report.other << '\n';
    os << "non-escaping runs " << report.runs.size() << ", all non-escaping samples fixed: "
       << (report.non_escaping_all_fixed ? "yes" : "no") << '\n';
    for (const auto& run : report.runs) {
        os << "  run [" << report.samples[run.first].x.to_string() << ", " << report.samples[run.last].x.to_string()
           << "] flanks " << (run.left_flank ? to_string(*run.left_flank) : "edge") << " / "
           << (run.right_flank ? to_string(*run.right_flank) : "edge") << '\n';
    }
    return os.str();
}

} // namespace escset

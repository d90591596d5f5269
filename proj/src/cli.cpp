#include "escset/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "escset/analysis.hpp"
#include "escset/builder.hpp"
#include "escset/family.hpp"
#include "escset/format.hpp"
#include "escset/itinerary.hpp"
#include "escset/report1d.hpp"
#include "escset/staircase.hpp"
#include "escset/verify.hpp"

namespace escset {

namespace {

struct RunConfig {
    std::string map;
    std::string point;
    std::size_t steps = 10;
    std::string window;
    std::string res = "256x256";
    std::size_t budget = 1000;
    double escape_radius = 100.0;
    std::size_t tail = 10;
    std::string out;
    std::uint64_t seed = 1;
    std::size_t depth = 3;
    std::string suite;
    std::string input;
    std::string radius;
    double r = 2.0;
};

bool is_line_map(const std::string& name) { return name == "staircase"; }

const PLMap1D& line_map(const std::string& name) {
    if (!is_line_map(name)) {
        throw ContractError("unknown one-dimensional map '" + name + "'");
    }
    return staircase_map();
}

std::vector<double> split_doubles(const std::string& text, char sep, std::size_t expected, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw ContractError(flag + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.size() != expected) {
        throw ContractError(flag + ": expected " + std::to_string(expected) + " values");
    }
    return out;
}

Point2 parse_point2(const std::string& text) {
    const auto v = split_doubles(text, ',', 2, "--point");
    return {v[0], v[1]};
}

Window parse_window(const std::string& text) {
    const auto v = split_doubles(text, ',', 4, "--window");
    return {v[0], v[1], v[2], v[3]};
}

std::pair<std::size_t, std::size_t> parse_res(const std::string& text) {
    const auto v = split_doubles(text, 'x', 2, "--res");
    if (!(v[0] >= 2 && v[1] >= 2 && v[0] == std::floor(v[0]) && v[1] == std::floor(v[1]))) {
        throw ContractError("--res: expected WxH with integers W, H >= 2");
    }
    return {static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1])};
}

ClassifyConfig classify_config(const RunConfig& rc) {
    ClassifyConfig cfg;
    cfg.max_iterations = rc.budget;
    cfg.escape_radius = rc.escape_radius;
    cfg.tail_window = rc.tail;
    cfg.validate();
    return cfg;
}

void require(const std::string& value, const std::string& flag) {
    if (value.empty()) {
        throw ContractError(flag + " is required");
    }
}

// Runs `body` with the stream selected by --out (stdout when empty).
template <class F>
void with_output(const RunConfig& rc, std::ostream& out, F body) {
    if (rc.out.empty()) {
        body(out);
        return;
    }
    std::ofstream file(rc.out, std::ios::binary);
    if (!file) {
        throw ContractError("cannot open '" + rc.out + "' for writing");
    }
    body(file);
}

int cmd_orbit(const RunConfig& rc, std::ostream& out) {
    require(rc.map, "--map");
    require(rc.point, "--point");
    if (is_line_map(rc.map)) {
        const auto orbit = iterate_orbit(line_map(rc.map), ExactScalar::parse(rc.point), rc.steps);
        with_output(rc, out, [&](std::ostream& os) { write_orbit_csv(os, orbit); });
    } else {
        const auto orbit = iterate_orbit(resolve_map2d(rc.map), parse_point2(rc.point), rc.steps);
        with_output(rc, out, [&](std::ostream& os) { write_orbit_csv(os, orbit); });
    }
    return kExitOk;
}

int cmd_classify(const RunConfig& rc, std::ostream& out) {
    require(rc.map, "--map");
    require(rc.point, "--point");
    const auto cfg = classify_config(rc);
    if (is_line_map(rc.map)) {
        out << describe(classify_exact(line_map(rc.map), ExactScalar::parse(rc.point), cfg)) << '\n';
    } else {
        out << describe(classify_numeric(resolve_map2d(rc.map), parse_point2(rc.point), cfg, Evidence::Drop)) << '\n';
    }
    return kExitOk;
}

int cmd_raster(const RunConfig& rc, std::ostream& out) {
    require(rc.map, "--map");
    const Map2D map = resolve_map2d(rc.map);
    Window window{};
    if (!rc.window.empty()) {
        window = parse_window(rc.window);
    } else {
        const auto names = map2d_names();
        if (std::find(names.begin(), names.end(), rc.map) != names.end()) {
            throw ContractError("--window is required for map '" + rc.map + "'");
        }
        const std::string prefix = "thm11-";
        window = demo_region(rc.map.rfind(prefix, 0) == 0 ? rc.map.substr(prefix.size()) : rc.map).view;
    }
    const auto [cols, rows] = parse_res(rc.res);
    const Raster raster = raster_classify(map, window, cols, rows, classify_config(rc));
    const auto components = label_components(raster);
    const std::string stem = rc.out.empty() ? "raster" : rc.out;
    {
        std::ofstream pgm(stem + ".pgm", std::ios::binary);
        std::ofstream csv(stem + ".csv", std::ios::binary);
        if (!pgm || !csv) {
            throw ContractError("cannot write '" + stem + ".pgm' / '" + stem + ".csv'");
        }
        write_pgm(raster, pgm);
        write_components_csv(components, csv);
    }
    const auto report = check_necessary_condition(components, rc.r);
    out << "map " << raster.map_id << " " << cols << "x" << rows << '\n';
    out << "escaping " << raster.count(VerdictKind::EscapingToBudget) << '\n';
    out << "fixed " << raster.count(VerdictKind::EventuallyFixed) + raster.count(VerdictKind::EventuallyPeriodic) << '\n';
    out << "bounded " << raster.count(VerdictKind::BoundedToBudget) << '\n';
    out << "undetermined " << raster.undetermined() << '\n';
    out << "components " << components.size() << " (4-connected)\n";
    out << "necessary condition r=" << format_double(rc.r) << ": " << to_string(report.verdict) << '\n';
    out << "wrote " << stem << ".pgm " << stem << ".csv\n";
    return kExitOk;
}

int cmd_itinerary(const RunConfig& rc, std::ostream& out) {
    const std::string map_name = rc.map.empty() ? "staircase" : rc.map;
    require(rc.input, "--input");
    nlohmann::json doc;
    try {
        if (rc.input == "-") {
            doc = nlohmann::json::parse(std::cin);
        } else {
            std::ifstream in(rc.input);
            if (!in) {
                throw ContractError("cannot read '" + rc.input + "'");
            }
            doc = nlohmann::json::parse(in);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ContractError(std::string("itinerary JSON: ") + e.what());
    }
    std::vector<RatInterval> intervals;
    std::vector<std::size_t> hops;
    try {
        for (const auto& pair : doc.at("intervals")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ContractError("itinerary JSON: each interval must be [\"lo\", \"hi\"]");
            }
            intervals.emplace_back(ExactScalar::parse(pair[0].get<std::string>()),
                                   ExactScalar::parse(pair[1].get<std::string>()));
        }
        if (doc.contains("hops")) {
            for (const auto& h : doc.at("hops")) {
                hops.push_back(h.get<std::size_t>());
            }
        } else {
            hops.assign(intervals.empty() ? 0 : intervals.size() - 1, 1);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ContractError(std::string("itinerary JSON: ") + e.what());
    }
    const PLMap1D& map = line_map(map_name);
    const auto w = itinerary_witness(map, intervals, hops);
    const bool ok = follows_itinerary(map, w.witness, intervals, hops);
    out << "witness " << w.witness << '\n';
    out << "certified_depth " << w.certified_depth << '\n';
    out << "refinement_components " << w.refinement.size() << (w.pruned ? " (pruned)" : "") << '\n';
    out << "forward_check " << (ok ? "pass" : "FAIL") << '\n';
    return ok ? kExitOk : kExitVerification;
}

int cmd_family(const RunConfig& rc, std::ostream& out) {
    const std::string map_name = rc.map.empty() ? "staircase" : rc.map;
    const PLMap1D& map = line_map(map_name);
    const ExactScalar center = ExactScalar::parse(rc.point.empty() ? "5/4" : rc.point);
    const ExactScalar radius = ExactScalar::parse(rc.radius.empty() ? "1/10" : rc.radius);
    const auto fam = escaping_family_near(map, center, radius, rc.depth, rc.budget);
    ClassifyConfig cfg;
    cfg.max_iterations = rc.budget;
    std::set<ExactScalar> distinct;
    std::size_t escaping = 0;
    std::size_t inside = 0;
    with_output(rc, out, [&](std::ostream& os) {
        os << "index,x,verdict\n";
        for (std::size_t i = 0; i < fam.points.size(); ++i) {
            const auto& x = fam.points[i];
            const auto v = classify_exact(map, x, cfg);
            distinct.insert(x);
            escaping += v.escaping() ? 1 : 0;
            inside += (x - center).abs() <= radius ? 1 : 0;
            os << i << ',' << x << ',' << to_string(v.kind()) << '\n';
        }
    });
    const std::size_t wanted = std::size_t{1} << rc.depth;
    const bool ok = distinct.size() >= wanted && escaping == fam.points.size() && inside == fam.points.size();
    out << "# pull_steps " << fam.pull_steps << ", D index " << fam.d_index << ", " << distinct.size()
                                 << " distinct, " << escaping << " escaping, " << inside << " inside, wanted " << wanted
                                 << '\n';
    return ok ? kExitOk : kExitVerification;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
    require(rc.suite, "--suite");
    const auto report = run_verify_suite(rc.suite, rc.seed);
    for (const auto& c : report.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
    out << "suite " << report.suite << ": " << (report.passed() ? "PASS" : "FAIL") << '\n';
    return report.passed() ? kExitOk : kExitVerification;
}

std::string map_list() {
    std::string s = "staircase";
    for (const auto& n : planar_map_names()) {
        s += ", " + n;
    }
    return s;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Escaping-set maps: iterate, classify, rasterize and verify", "escset"};
    app.require_subcommand(1, 1);
    RunConfig rc;

    auto add_map = [&](CLI::App* sub) { sub->add_option("--map", rc.map, "Map name: " + map_list()); };
    auto add_point = [&](CLI::App* sub, const std::string& help) { sub->add_option("--point", rc.point, help); };
    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--budget", rc.budget, "Iteration budget")->capture_default_str();
        sub->add_option("--escape-radius", rc.escape_radius, "Escape radius")->capture_default_str();
        sub->add_option("--tail", rc.tail, "Tail window of iterates beyond the radius")->capture_default_str();
    };

    auto* orbit = app.add_subcommand("orbit", "Print an orbit as CSV");
    add_map(orbit);
    add_point(orbit, "Start point: p/q for staircase, x,y for planar maps");
    orbit->add_option("--steps", rc.steps, "Number of steps")->capture_default_str();
    orbit->add_option("--out", rc.out, "CSV path (default stdout)");

    auto* classify = app.add_subcommand("classify", "Classify one point");
    add_map(classify);
    add_point(classify, "Point: p/q for staircase, x,y for planar maps");
    add_budget(classify);

    auto* raster = app.add_subcommand("raster", "Classify a window; write <out>.pgm and <out>.csv");
    add_map(raster);
    raster->add_option("--window", rc.window, "x0,x1,y0,y1 (default: the region view for demo regions)");
    raster->add_option("--res", rc.res, "Resolution WxH")->capture_default_str();
    add_budget(raster);
    raster->add_option("--out", rc.out, "Output stem")->default_str("raster");
    raster->add_option("--r", rc.r, "Radius r of the necessary-condition check")->capture_default_str();

    auto* itinerary = app.add_subcommand("itinerary", "Witness for a prescribed covering itinerary");
    add_map(itinerary);
    itinerary->add_option("--input", rc.input, "JSON file ('-' for stdin): {\"intervals\": [[\"lo\",\"hi\"], ...], \"hops\": [n, ...]}");

    auto* family = app.add_subcommand("family", "Escaping witnesses near a point");
    add_map(family);
    add_point(family, "Center p/q (default 5/4)");
    family->add_option("--radius", rc.radius, "Neighborhood radius p/q (default 1/10)");
    family->add_option("--depth", rc.depth, "Family depth K (2^K witnesses)")->capture_default_str();
    family->add_option("--budget", rc.budget, "Iteration budget")->capture_default_str();
    family->add_option("--out", rc.out, "CSV path (default stdout)");

    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    verify->add_option("--suite", rc.suite, "kdl, iab, continuity, dichotomy or thm12");
    verify->add_option("--seed", rc.seed, "Seed for random probes")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitContract;
    }

    try {
        if (*orbit) {
            return cmd_orbit(rc, out);
        }
        if (*classify) {
            return cmd_classify(rc, out);
        }
        if (*raster) {
            return cmd_raster(rc, out);
        }
        if (*itinerary) {
            return cmd_itinerary(rc, out);
        }
        if (*family) {
            return cmd_family(rc, out);
        }
        return cmd_verify(rc, out);
    } catch (const ContractError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kExitContract;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitContract;
    }
}

} // namespace escset

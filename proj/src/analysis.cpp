#include "escset/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>

#include "escset/builder.hpp"
#include "escset/family.hpp"
#include "escset/format.hpp"
#include "escset/sectors.hpp"
#include "escset/snake.hpp"
#include "escset/staircase.hpp"

namespace escset {

std::vector<std::string> planar_map_names() {
    auto names = map2d_names();
    for (const auto& r : demo_regions()) {
        names.push_back(r.name);
    }
    return names;
}

Map2D resolve_map2d(const std::string& name) {
    const auto builtin = map2d_names();
    if (std::find(builtin.begin(), builtin.end(), name) != builtin.end()) {
        return map2d_by_name(name);
    }
    const std::string prefix = "thm11-";
    const std::string region = name.rfind(prefix, 0) == 0 ? name.substr(prefix.size()) : name;
    for (const auto& r : demo_regions()) {
        if (r.name == region) {
            return build_thm11_map(r);
        }
    }
    throw ContractError("unknown map '" + name + "'");
}

Point2 Raster::cell_center(std::size_t col, std::size_t row) const {
    const double dx = (window.x_max - window.x_min) / static_cast<double>(cols);
    const double dy = (window.y_max - window.y_min) / static_cast<double>(rows);
    return {window.x_min + (static_cast<double>(col) + 0.5) * dx, window.y_max - (static_cast<double>(row) + 0.5) * dy};
}

std::size_t Raster::count(VerdictKind kind) const { return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), kind)); }

namespace {

void check_grid(const Window& window, std::size_t cols, std::size_t rows) {
    if (cols < 2 || rows < 2) {
        throw ContractError("raster: resolution must be at least 2x2");
    }
    if (window.degenerate()) {
        throw ContractError("raster: degenerate window");
    }
}

Raster empty_raster(const Window& window, std::size_t cols, std::size_t rows, std::string id) {
    Raster r;
    r.window = window;
    r.cols = cols;
    r.rows = rows;
    r.map_id = std::move(id);
    r.cells.assign(cols * rows, VerdictKind::Undetermined);
    r.points.resize(cols * rows);
    for (std::size_t row = 0; row < rows; ++row) {
        for (std::size_t col = 0; col < cols; ++col) {
            r.points[r.index(col, row)] = r.cell_center(col, row);
        }
    }
    return r;
}

// Cell containing p, or nothing when p lies outside the half-open grid.
std::optional<std::size_t> cell_of(const Raster& r, const Point2& p) {
    const double fx = (p.x() - r.window.x_min) / (r.window.x_max - r.window.x_min) * static_cast<double>(r.cols);
    const double fy = (r.window.y_max - p.y()) / (r.window.y_max - r.window.y_min) * static_cast<double>(r.rows);
    if (!(fx >= 0.0 && fy >= 0.0 && fx < static_cast<double>(r.cols) && fy < static_cast<double>(r.rows))) {
        return std::nullopt;
    }
    return r.index(static_cast<std::size_t>(fx), static_cast<std::size_t>(fy));
}

} // namespace

Raster raster_classify(const Map2D& map, const Window& window, std::size_t cols, std::size_t rows,
                       const ClassifyConfig& cfg, unsigned threads) {
    check_grid(window, cols, rows);
    cfg.validate();
    Raster r = empty_raster(window, cols, rows, map.name());
    r.cfg = cfg;

    // The first feature point (in listed order) claims its cell.
    std::vector<bool> claimed(r.cells.size(), false);
    for (const auto& f : map.feature_points(window)) {
        if (const auto idx = cell_of(r, f); idx && !claimed[*idx]) {
            claimed[*idx] = true;
            r.points[*idx] = f;
        }
    }

    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows));
    std::atomic<std::size_t> next_row{0};
    auto worker = [&] {
        for (std::size_t row = next_row++; row < rows; row = next_row++) {
            for (std::size_t col = 0; col < cols; ++col) {
                const std::size_t i = r.index(col, row);
                try {
                    r.cells[i] = classify_numeric(map, r.points[i], cfg, Evidence::Drop).kind();
                } catch (const ResourceError&) {
                    r.cells[i] = VerdictKind::Undetermined;
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    return r;
}

Raster raster_classify(const std::string& map_id, const Window& window, std::size_t cols, std::size_t rows,
                       const ClassifyConfig& cfg, unsigned threads) {
    return raster_classify(resolve_map2d(map_id), window, cols, rows, cfg, threads);
}

Raster raster_from_predicate(const Window& window, std::size_t cols, std::size_t rows,
                             const std::function<bool(const Point2&)>& escaping, std::string id) {
    check_grid(window, cols, rows);
    Raster r = empty_raster(window, cols, rows, std::move(id));
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
        r.cells[i] = escaping(r.points[i]) ? VerdictKind::EscapingToBudget : VerdictKind::EventuallyFixed;
    }
    return r;
}

Window disc_chain_window() { return {-0.5, 20.5, -1.0, 1.0}; }

Raster disc_chain_raster(const Window& window, std::size_t cols, std::size_t rows) {
    auto in_chain = [](const Point2& p) {
        const double n = std::max(1.0, std::round(p.x()));
        return distance(p, {n, 0.0}) < 0.25;
    };
    return raster_from_predicate(window, cols, rows, in_chain, "disc-chain");
}

ComponentLabels label_cells(const Raster& r) {
    ComponentLabels out;
    out.labels.assign(r.cells.size(), 0);
    std::vector<std::size_t> stack;
    std::vector<ComponentStats> raw;
    std::vector<std::size_t> first_cell;
    for (std::size_t start = 0; start < r.cells.size(); ++start) {
        if (r.cells[start] != VerdictKind::EscapingToBudget || out.labels[start] != 0) {
            continue;
        }
        const std::size_t label = raw.size() + 1;
        ComponentStats s;
        s.min_norm = std::numeric_limits<double>::infinity();
        s.max_norm = 0.0;
        out.labels[start] = label;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            const std::size_t row = i / r.cols;
            const std::size_t col = i % r.cols;
            const double n = r.points[i].norm();
            ++s.cells;
            s.min_norm = std::min(s.min_norm, n);
            s.max_norm = std::max(s.max_norm, n);
            if (row == 0 || col == 0 || row + 1 == r.rows || col + 1 == r.cols) {
                s.touches_edge = true;
            }
            auto visit = [&](std::size_t j) {
                if (r.cells[j] == VerdictKind::EscapingToBudget && out.labels[j] == 0) {
                    out.labels[j] = label;
                    stack.push_back(j);
                }
            };
            if (row > 0) {
                visit(i - r.cols);
            }
            if (row + 1 < r.rows) {
                visit(i + r.cols);
            }
            if (col > 0) {
                visit(i - 1);
            }
            if (col + 1 < r.cols) {
                visit(i + 1);
            }
        }
        raw.push_back(s);
        first_cell.push_back(start);
    }

    std::vector<std::size_t> order(raw.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        order[k] = k;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (raw[a].min_norm != raw[b].min_norm) {
            return raw[a].min_norm < raw[b].min_norm;
        }
        return first_cell[a] < first_cell[b];
    });
    std::vector<std::size_t> relabel(raw.size() + 1, 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        relabel[order[k] + 1] = k + 1;
        ComponentStats s = raw[order[k]];
        s.id = k + 1;
        out.components.push_back(s);
    }
    for (auto& l : out.labels) {
        l = relabel[l];
    }
    return out;
}

std::vector<ComponentStats> label_components(const Raster& r) { return label_cells(r).components; }

const char* to_string(NecessaryVerdict v) {
    switch (v) {
    case NecessaryVerdict::Consistent: return "consistent";
    case NecessaryVerdict::ViolatedInWindow: return "violated-in-window";
    case NecessaryVerdict::Vacuous: return "vacuous";
    }
    return "?";
}

NecessaryConditionReport check_necessary_condition(const std::vector<ComponentStats>& components, double r) {
    if (!(r > 0.0)) {
        throw ContractError("check_necessary_condition: r must be positive");
    }
    NecessaryConditionReport rep;
    rep.r = r;
    if (components.empty()) {
        rep.verdict = NecessaryVerdict::Vacuous;
        rep.note = "no escaping components in the window; the condition holds vacuously";
        return rep;
    }
    for (const auto& c : components) {
        if (c.min_norm <= r) {
            rep.near_origin.push_back(c);
            rep.reaches_edge = rep.reaches_edge || c.touches_edge;
        }
    }
    std::stable_sort(rep.near_origin.begin(), rep.near_origin.end(),
                     [](const ComponentStats& a, const ComponentStats& b) { return a.max_norm < b.max_norm; });
    if (rep.reaches_edge) {
        rep.verdict = NecessaryVerdict::Consistent;
        rep.note = "a component within r of the origin reaches the window edge; window evidence, not a proof";
    } else {
        rep.verdict = NecessaryVerdict::ViolatedInWindow;
        rep.note = "every component within r of the origin stays inside the window";
    }
    return rep;
}

CensusReport neighborhood_census(const PLMap1D& map, const ExactScalar& center, const ExactScalar& radius,
                                 std::size_t samples, std::size_t budget, std::size_t depth) {
    if (radius.sign() < 0) {
        throw ContractError("neighborhood_census: radius must be >= 0");
    }
    const bool single = radius.sign() == 0;
    if (!single && samples < 3) {
        throw ContractError("neighborhood_census: need at least 3 samples");
    }
    ClassifyConfig cfg;
    cfg.max_iterations = budget;
    CensusReport rep;
    rep.center = center;
    rep.radius = radius;
    rep.depth = depth;
    rep.samples = single ? 1 : samples;
    for (std::size_t i = 0; i < rep.samples; ++i) {
        const ExactScalar x = single ? center
                                     : center - radius
                                           + ExactScalar(2) * radius
                                                 * ExactScalar(static_cast<std::int64_t>(i),
                                                               static_cast<std::int64_t>(samples - 1));
        const auto v = classify_exact(map, x, cfg);
        if (v.escaping()) {
            ++rep.escaping;
        } else if (v.fixed()) {
            ++rep.fixed;
        } else {
            ++rep.other;
        }
    }
    rep.center_escapes = classify_exact(map, center, cfg).escaping();
    if (rep.center_escapes && !single) {
        rep.witnesses = escaping_family_near(map, center, radius, depth, budget).points;
    }
    return rep;
}

std::vector<Seam> standard_seams(const std::string& map_name) {
    const Point2 ex(1.0, 0.0);
    const Point2 ey(0.0, 1.0);
    if (map_name == "halfplane") {
        return {{"x=-1, y=0", {-1.0, 0.0}, ex},
                {"x=-1, y=3", {-1.0, 3.0}, ex},
                {"x=0, y=0", {0.0, 0.0}, ex},
                {"x=0, y=-2", {0.0, -2.0}, ex}};
    }
    if (map_name == "grid" || map_name == "grid-complement") {
        return {{"y=0, x=0.3", {0.3, 0.0}, ey}, {"y=1, x=0.3", {0.3, 1.0}, ey}, {"y=1, x=2.7", {2.7, 1.0}, ey},
                {"y=2, x=0.3", {0.3, 2.0}, ey}, {"y=2, x=2.7", {2.7, 2.0}, ey}};
    }
    if (map_name == "sectors") {
        const auto params = SectorParams::defaults();
        std::vector<Seam> out;
        for (std::int64_t n = 1; n <= 3; ++n) {
            const std::string tag = "n=" + std::to_string(n);
            for (const double theta : {params.phi(n), params.phi_prime(n)}) {
                const Point2 base = from_polar({params.rho(n) / 2.0, theta});
                out.push_back({"angle edge " + tag, base, {-std::sin(theta), std::cos(theta)}});
            }
            const double mid = 0.5 * (params.phi(n) + params.phi_prime(n));
            out.push_back({"outer arc " + tag, from_polar({params.rho(n), mid}), {std::cos(mid), std::sin(mid)}});
        }
        return out;
    }
    if (map_name == "snake") {
        return {{"y=1/2 inside U", {1.25, 0.5}, ey},
                {"y=1 seam", {0.3, 1.0}, ey},
                {"y=3/4 inside U", {snake_phi(0.75) + 0.3 * 0.75, 0.75}, ey},
                {"spine", snake_gamma(2.5), ex},
                {"left flank", snake_gamma_left(2.5), ex},
                {"right flank", snake_gamma_right(2.5), ex},
                {"y->0 seam", {0.5, 0.0}, ey, true}};
    }
    for (const auto& r : demo_regions()) {
        if (r.name == map_name || "thm11-" + r.name == map_name) {
            std::vector<Seam> out;
            for (const double t : {0.5, 1.5, 3.0}) {
                const Point2 g = r.gamma(t);
                out.push_back({"curve t=" + format_double(t), g, ex});
            }
            for (const auto& k : r.pieces) {
                const double s = std::isfinite(k.s_max) ? 0.5 * (k.s_min + k.s_max) : k.s_min + 1.25;
                const Point2 a = k.at(s);
                const Point2 b = k.at(s + 1e-3);
                const double len = distance(a, b);
                out.push_back({k.label, a, {-(b.y() - a.y()) / len, (b.x() - a.x()) / len}});
            }
            return out;
        }
    }
    throw ContractError("standard_seams: unknown map '" + map_name + "'");
}

SeamResult probe_seam(const Map2D& map, const Seam& seam) {
    SeamResult res;
    res.seam = seam;
    std::vector<double> deltas;
    if (seam.slow) {
        for (int e = 2; e <= 256; e *= 2) {
            deltas.push_back(0.7 * std::pow(10.0, -e));
        }
    } else {
        for (int e = 2; e <= 8; ++e) {
            deltas.push_back(std::pow(10.0, -e));
        }
    }
    for (const double d : deltas) {
        double gap = std::numeric_limits<double>::quiet_NaN();
        try {
            gap = distance(map.apply(seam.base + d * seam.normal), map.apply(seam.base - d * seam.normal));
        } catch (const ResourceError&) {
        }
        res.deltas.push_back(d);
        res.gaps.push_back(gap);
        if (std::isfinite(gap)) {
            res.fitted_c = std::max(res.fitted_c, gap / (2.0 * d));
        }
    }
    const double first = res.gaps.front();
    const double last = res.gaps.back();
    const double bound = seam.slow ? first / 20.0 : 1e-4 * (1.0 + first);
    res.converging = std::isfinite(first) && std::isfinite(last) && last <= bound;
    return res;
}

void write_pgm(const Raster& r, std::ostream& out) {
    out << "P5\n" << r.cols << ' ' << r.rows << "\n255\n";
    for (const auto kind : r.cells) {
        unsigned char byte = 64;
        switch (kind) {
        case VerdictKind::EscapingToBudget: byte = 0; break;
        case VerdictKind::EventuallyFixed:
        case VerdictKind::EventuallyPeriodic: byte = 255; break;
        case VerdictKind::BoundedToBudget: byte = 128; break;
        case VerdictKind::Undetermined: byte = 64; break;
        }
        out.put(static_cast<char>(byte));
    }
}

void write_components_csv(const std::vector<ComponentStats>& components, std::ostream& out) {
    out << "id,cells,min_norm,max_norm,edge\n";
    for (const auto& c : components) {
        out << c.id << ',' << c.cells << ',' << format_double(c.min_norm) << ',' << format_double(c.max_norm) << ','
            << (c.touches_edge ? 1 : 0) << '\n';
    }
}

} // namespace escset

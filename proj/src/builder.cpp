#include "escset/builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace escset {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Van der Corput radical inverse in base 2; i = 1, 2, ... gives a nested
// sequence that fills (0, 1).
double van_der_corput(std::size_t i) {
    double v = 0.0;
    double f = 0.5;
    while (i != 0) {
        if ((i & 1U) != 0) {
            v += f;
        }
        i >>= 1U;
        f *= 0.5;
    }
    return v;
}

double axis_value(const Point2& p, int axis) { return axis == 0 ? p.x() : p.y(); }

double clamp_to(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

KPiece straight_piece(std::string label, int axis, double fixed, double s_min, double s_max, bool on_curve) {
    KPiece k;
    k.label = std::move(label);
    k.axis = axis;
    k.s_min = s_min;
    k.s_max = s_max;
    k.at = [axis, fixed](double s) { return axis == 0 ? Point2(s, fixed) : Point2(fixed, s); };
    k.phi = on_curve ? std::function<double(double)>([](double s) { return s; })
                     : std::function<double(double)>([](double) { return 0.0; });
    k.nearest = [axis, s_min, s_max](const Point2& p) { return clamp_to(axis_value(p, axis), s_min, s_max); };
    return k;
}

// Centre line of the zigzag corridor: c(y) = amp * tri(y / period).
struct Zigzag {
    double amp = 2.0;
    double period = 2.0;
    double half_width = 0.5;

    double c(double y) const {
        const double u = y / period;
        const double frac = u - std::floor(u);
        return amp * (1.0 - std::fabs(1.0 - 2.0 * frac));
    }
    double vertex_spacing() const { return period / 2.0; }

    // y-parameter of the closest point of the polyline {(c(s) + offset, s) : s >= 0}.
    double nearest(const Point2& p, double offset) const {
        const double h = vertex_spacing();
        const double y0 = std::max(p.y(), 0.0);
        const double bound = distance(p, {c(y0) + offset, y0});
        const auto k_lo = static_cast<long long>(std::max(0.0, std::floor((p.y() - bound) / h)));
        const auto k_hi = static_cast<long long>(std::max(0.0, std::ceil((p.y() + bound) / h)));
        double best_s = y0;
        double best_d = bound;
        for (long long k = k_lo; k <= k_hi; ++k) {
            const double ya = static_cast<double>(k) * h;
            const double yb = ya + h;
            const Point2 a(c(ya) + offset, ya);
            const Point2 b(c(yb) + offset, yb);
            const double dx = b.x() - a.x();
            const double dy = b.y() - a.y();
            const double t = clamp_to(((p.x() - a.x()) * dx + (p.y() - a.y()) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
            const double s = ya + t * h;
            const double d = distance(p, {c(s) + offset, s});
            if (d < best_d) {
                best_d = d;
                best_s = s;
            }
        }
        return best_s;
    }

    KPiece piece(std::string label, double offset, bool on_curve) const {
        KPiece k;
        k.label = std::move(label);
        k.axis = 1;
        k.s_min = 0.0;
        k.s_max = kInf;
        Zigzag z = *this;
        k.at = [z, offset](double s) { return Point2(z.c(s) + offset, s); };
        k.phi = on_curve ? std::function<double(double)>([](double s) { return s; })
                         : std::function<double(double)>([](double) { return 0.0; });
        k.nearest = [z, offset](const Point2& p) { return z.nearest(p, offset); };
        return k;
    }
};

double piece_distance(const KPiece& k, const Point2& p) { return distance(p, k.at(k.nearest(p))); }

std::vector<KPiece> half_strip_pieces() {
    return {straight_piece("left wall", 1, 0.0, -1.0, 1.0, false),
            straight_piece("upper edge", 0, 1.0, 0.0, kInf, false),
            straight_piece("lower edge", 0, -1.0, 0.0, kInf, false),
            straight_piece("access curve", 0, 0.0, 0.0, kInf, true)};
}

Membership half_strip_membership(const Point2& p) {
    if (p.x() > 0.0 && std::fabs(p.y()) < 1.0) {
        return {MembershipKind::InMainComponent, 0.0};
    }
    return {MembershipKind::Outside, 0.0};
}

} // namespace

void RegionSpec::validate() const {
    if (!membership || !boundary_dist || !gamma || !gamma_inverse || pieces.empty()) {
        throw ContractError("region '" + name + "': incomplete specification");
    }
    if (distance(gamma(0.0), x0) > 1e-12) {
        throw ContractError("region '" + name + "': gamma(0) differs from x0");
    }
    if (membership(x0).kind == MembershipKind::InMainComponent) {
        throw ContractError("region '" + name + "': x0 must lie on the boundary, not inside");
    }
    const std::vector<double> ts{0.125, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0};
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const Point2 g = gamma(ts[i]);
        if (membership(g).kind != MembershipKind::InMainComponent) {
            throw ContractError("region '" + name + "': gamma leaves U at t=" + std::to_string(ts[i]));
        }
        const auto back = gamma_inverse(g);
        if (!back || std::fabs(*back - ts[i]) > 1e-9 * (1.0 + ts[i])) {
            throw ContractError("region '" + name + "': gamma_inverse does not invert gamma");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (same_bits(g, gamma(ts[j]))) {
                throw ContractError("region '" + name + "': gamma is not injective on samples");
            }
        }
    }
    if (gamma(1e6).norm() < 1e5) {
        throw ContractError("region '" + name + "': gamma does not tend to infinity");
    }
}

ExtensionSpec extension_for(const RegionSpec& region) {
    ExtensionSpec spec;
    spec.phi = [region](const Point2& p) {
        const auto t = region.gamma_inverse(p);
        return t ? *t : 0.0;
    };
    spec.k_dist = [region](const Point2& p) {
        if (region.membership(p).kind != MembershipKind::InMainComponent || region.gamma_inverse(p)) {
            return 0.0;
        }
        double d = kInf;
        for (const auto& k : region.pieces) {
            d = std::min(d, piece_distance(k, p));
        }
        return d;
    };
    spec.k_nearest = [region, phi = spec.phi](const Point2& p) -> std::pair<Point2, double> {
        if (region.membership(p).kind != MembershipKind::InMainComponent || region.gamma_inverse(p)) {
            return {p, phi(p)};
        }
        double best = kInf;
        std::pair<Point2, double> out{p, 0.0};
        for (const auto& k : region.pieces) {
            const double s = k.nearest(p);
            const Point2 q = k.at(s);
            const double d = distance(p, q);
            if (d < best) {
                best = d;
                out = {q, k.phi(s)};
            }
        }
        return out;
    };
    spec.k_sampler = [region](const Point2& p, double radius, std::size_t n) {
        std::vector<std::pair<Point2, double>> out;
        for (const auto& k : region.pieces) {
            const double centre = axis_value(p, k.axis);
            const double lo = std::max(k.s_min, centre - radius);
            const double hi = std::min(k.s_max, centre + radius);
            if (!(lo <= hi)) {
                continue;
            }
            for (std::size_t i = 1; i <= n; ++i) {
                const double s = lo + (hi - lo) * van_der_corput(i);
                const Point2 q = k.at(s);
                if (distance(p, q) <= radius) {
                    out.emplace_back(q, k.phi(s));
                }
            }
        }
        return out;
    };
    return spec;
}

double tietze_psi(const ExtensionSpec& spec, const Point2& p, std::size_t sample_budget) {
    if (sample_budget == 0) {
        throw ContractError("tietze_psi: sample budget must be positive");
    }
    const double d = spec.k_dist(p);
    if (!(d > 0.0)) {
        return spec.phi(p);
    }
    const auto [q, phi_q] = spec.k_nearest(p);
    double best = phi_q + distance(p, q) / d - 1.0;
    // Points farther than d * (best + 1) cannot lower the infimum since phi >= 0.
    const double radius = d * (best + 1.0);
    for (const auto& [y, phi_y] : spec.k_sampler(p, radius, sample_budget)) {
        best = std::min(best, phi_y + distance(p, y) / d - 1.0);
    }
    return best + d;
}

Map2D build_thm11_map(const RegionSpec& region, std::size_t sample_budget) {
    region.validate();
    const auto ext = extension_for(region);
    auto step = [region, ext, sample_budget](const Point2& p) {
        const auto m = region.membership(p);
        switch (m.kind) {
        case MembershipKind::Outside: return region.x0;
        case MembershipKind::InOtherComponent: return region.gamma(m.other_boundary_dist);
        case MembershipKind::InMainComponent: break;
        }
        if (const auto t = region.gamma_inverse(p)) {
            return region.gamma(2.0 * *t);
        }
        return region.gamma(2.0 * tietze_psi(ext, p, sample_budget));
    };
    return {"thm11-" + region.name, step, {}, {}};
}

RegionSpec half_strip_region() {
    RegionSpec r;
    r.name = "half-strip";
    r.membership = half_strip_membership;
    r.boundary_dist = [](const Point2& p) { return std::min(p.x(), 1.0 - std::fabs(p.y())); };
    r.gamma = [](double t) { return Point2(t, 0.0); };
    r.gamma_inverse = [](const Point2& p) -> std::optional<double> {
        if (p.y() == 0.0 && p.x() >= 0.0) {
            return p.x();
        }
        return std::nullopt;
    };
    r.x0 = Point2(0.0, 0.0);
    r.pieces = half_strip_pieces();
    r.view = {-1.0, 4.0, -1.5, 1.5};
    return r;
}

RegionSpec zigzag_region() {
    const Zigzag z;
    RegionSpec r;
    r.name = "snake-region";
    r.membership = [z](const Point2& p) {
        if (p.y() > 0.0 && std::fabs(p.x() - z.c(p.y())) < z.half_width) {
            return Membership{MembershipKind::InMainComponent, 0.0};
        }
        return Membership{MembershipKind::Outside, 0.0};
    };
    const KPiece left = z.piece("left wall", -z.half_width, false);
    const KPiece right = z.piece("right wall", z.half_width, false);
    const KPiece bottom = straight_piece("bottom", 0, 0.0, z.c(0.0) - z.half_width, z.c(0.0) + z.half_width, false);
    r.boundary_dist = [left, right, bottom](const Point2& p) {
        return std::min({piece_distance(left, p), piece_distance(right, p), piece_distance(bottom, p)});
    };
    r.gamma = [z](double t) { return Point2(z.c(t), t); };
    r.gamma_inverse = [z](const Point2& p) -> std::optional<double> {
        if (p.y() >= 0.0 && std::fabs(p.x() - z.c(p.y())) <= 1e-12 * (1.0 + std::fabs(p.x()))) {
            return p.y();
        }
        return std::nullopt;
    };
    r.x0 = Point2(z.c(0.0), 0.0);
    r.pieces = {left, right, bottom, z.piece("access curve", 0.0, true)};
    r.view = {-1.5, 3.5, -0.5, 4.5};
    return r;
}

RegionSpec half_strip_discs_region() {
    struct Disc {
        Point2 centre;
        double radius;
    };
    const std::vector<Disc> discs{{Point2(2.0, 3.0), 1.0}, {Point2(5.0, -3.5), 1.5}};
    RegionSpec r = half_strip_region();
    r.name = "half-strip-discs";
    r.membership = [discs](const Point2& p) {
        const auto main = half_strip_membership(p);
        if (main.kind == MembershipKind::InMainComponent) {
            return main;
        }
        for (const auto& d : discs) {
            const double gap = d.radius - distance(p, d.centre);
            if (gap > 0.0) {
                return Membership{MembershipKind::InOtherComponent, gap};
            }
        }
        return Membership{MembershipKind::Outside, 0.0};
    };
    r.view = {-1.0, 8.0, -5.5, 4.5};
    return r;
}

std::vector<RegionSpec> demo_regions() { return {half_strip_region(), zigzag_region(), half_strip_discs_region()}; }

RegionSpec demo_region(const std::string& name) {
    for (auto& r : demo_regions()) {
        if (r.name == name) {
            return r;
        }
    }
    throw ContractError("unknown demo region '" + name + "'");
}

} // namespace escset

#include "escset/pl_map.hpp"

#include "escset/errors.hpp"

#include <algorithm>

namespace escset {

RatInterval::RatInterval(ExactScalar lo, ExactScalar hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) {
        throw ContractError("interval with lo > hi: [" + lo_.to_string() + "," + hi_.to_string() + "]");
    }
}

std::optional<RatInterval> RatInterval::intersect(const RatInterval& o) const {
    auto lo = max(lo_, o.lo_);
    auto hi = min(hi_, o.hi_);
    if (hi < lo) {
        return std::nullopt;
    }
    return RatInterval(std::move(lo), std::move(hi));
}

PLMap1D::PLMap1D(std::string name, Affine head, std::vector<AffinePiece> pieces, bool periodic_tail)
    : name_(std::move(name)), head_(std::move(head)), pieces_(std::move(pieces)), periodic_(periodic_tail) {
    if (pieces_.empty()) {
        throw ContractError("PLMap1D needs at least one piece");
    }
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        if (!(pieces_[i - 1].breakpoint < pieces_[i].breakpoint)) {
            throw ContractError("PLMap1D breakpoints must be strictly increasing");
        }
    }
    if (periodic_ && !(pieces_.back().breakpoint < pieces_.front().breakpoint + ExactScalar(1))) {
        throw ContractError("periodic pieces must fit in one unit interval");
    }
    check_continuity();
    nonneg_displacement_ = compute_nonneg_displacement();
}

PLMap1D PLMap1D::interpolate(std::string name, const ExactScalar& head_slope,
                             const std::vector<std::pair<ExactScalar, ExactScalar>>& knots,
                             const ExactScalar& tail_slope) {
    if (knots.size() < 2) {
        throw ContractError("interpolate needs at least two knots");
    }
    const auto& [x0, y0] = knots.front();
    Affine head{head_slope, y0 - head_slope * x0};
    std::vector<AffinePiece> pieces;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const auto& [xa, ya] = knots[i];
        const auto& [xb, yb] = knots[i + 1];
        if (!(xa < xb)) {
            throw ContractError("interpolate knots must have increasing x");
        }
        const auto slope = (yb - ya) / (xb - xa);
        pieces.push_back({xa, slope, ya - slope * xa});
    }
    const auto& [xn, yn] = knots.back();
    pieces.push_back({xn, tail_slope, yn - tail_slope * xn});
    return PLMap1D(std::move(name), std::move(head), std::move(pieces), false);
}

void PLMap1D::check_continuity() const {
    auto fail = [&](const ExactScalar& at) {
        throw ContractError("PLMap1D '" + name_ + "' is discontinuous at " + at.to_string());
    };
    const auto& first = pieces_.front();
    if (head_(first.breakpoint) != Affine{first.slope, first.intercept}(first.breakpoint)) {
        fail(first.breakpoint);
    }
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        const auto& b = pieces_[i].breakpoint;
        if (Affine{pieces_[i - 1].slope, pieces_[i - 1].intercept}(b) != Affine{pieces_[i].slope, pieces_[i].intercept}(b)) {
            fail(b);
        }
    }
    if (periodic_) {
        const ExactScalar seam = first.breakpoint + ExactScalar(1);
        const auto& last = pieces_.back();
        const auto left = Affine{last.slope, last.intercept}(seam);
        const auto right = Affine{first.slope, first.intercept}(first.breakpoint) + ExactScalar(1);
        if (left != right) {
            fail(seam);
        }
    }
}

bool PLMap1D::compute_nonneg_displacement() const {
    const ExactScalar one(1);
    // g(x) = f(x) - x is piecewise linear; check its sign at every knot and
    // its behaviour on the unbounded ends.
    const auto& b0 = pieces_.front().breakpoint;
    const auto head_slope = head_.slope - one;
    if (head_(b0) - b0 < ExactScalar(0) || head_slope > ExactScalar(0)) {
        return false;
    }
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const Affine f{pieces_[i].slope, pieces_[i].intercept};
        const auto& a = pieces_[i].breakpoint;
        ExactScalar b = i + 1 < pieces_.size() ? pieces_[i + 1].breakpoint : (periodic_ ? b0 + one : a);
        if (f(a) < a || f(b) < b) {
            return false;
        }
    }
    if (!periodic_ && pieces_.back().slope < one) {
        return false;
    }
    return true;
}

PLMap1D::Located PLMap1D::locate(const ExactScalar& x) const {
    const auto& b0 = pieces_.front().breakpoint;
    if (x < b0) {
        return {head_, b0};
    }
    auto find_piece = [&](const ExactScalar& u) {
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), u,
                                   [](const ExactScalar& v, const AffinePiece& p) { return v < p.breakpoint; });
        return static_cast<std::size_t>(std::distance(pieces_.begin(), it)) - 1;
    };
    if (!periodic_) {
        const auto i = find_piece(x);
        std::optional<ExactScalar> next;
        if (i + 1 < pieces_.size()) {
            next = pieces_[i + 1].breakpoint;
        }
        return {Affine{pieces_[i].slope, pieces_[i].intercept}, next};
    }
    const ExactScalar shift = (x - b0).floor();
    const ExactScalar u = x - shift;
    const auto i = find_piece(u);
    const ExactScalar next = (i + 1 < pieces_.size() ? pieces_[i + 1].breakpoint : b0 + ExactScalar(1)) + shift;
    // f(x) = s (x - k) + c + k
    const auto& p = pieces_[i];
    return {Affine{p.slope, p.intercept + shift - p.slope * shift}, next};
}

ExactScalar PLMap1D::apply(const ExactScalar& x) const { return locate(x).f(x); }

std::vector<AffineSegment> PLMap1D::segments_on(const ExactScalar& lo, const ExactScalar& hi) const {
    if (hi < lo) {
        throw ContractError("segments_on: lo > hi");
    }
    std::vector<AffineSegment> out;
    ExactScalar pos = lo;
    while (true) {
        auto loc = locate(pos);
        const bool stop = !loc.next_breakpoint || !(*loc.next_breakpoint < hi);
        ExactScalar end = stop ? hi : *loc.next_breakpoint;
        out.push_back({pos, end, std::move(loc.f)});
        if (stop) {
            break;
        }
        pos = std::move(end);
    }
    return out;
}

std::vector<ExactScalar> PLMap1D::breakpoints_in(const ExactScalar& lo, const ExactScalar& hi) const {
    std::vector<ExactScalar> out;
    const auto segs = segments_on(lo, hi);
    for (std::size_t i = 1; i < segs.size(); ++i) {
        out.push_back(segs[i].lo);
    }
    return out;
}

RatInterval pl_image_interval(const PLMap1D& map, const RatInterval& iv) {
    std::optional<ExactScalar> lo;
    std::optional<ExactScalar> hi;
    for (const auto& seg : map.segments_on(iv.lo(), iv.hi())) {
        for (const auto* x : {&seg.lo, &seg.hi}) {
            auto y = seg.f(*x);
            if (!lo || y < *lo) {
                lo = y;
            }
            if (!hi || *hi < y) {
                hi = std::move(y);
            }
        }
    }
    return {*lo, *hi};
}

RatInterval pl_image_interval(const PLMap1D& map, const RatInterval& iv, std::size_t n) {
    RatInterval out = iv;
    for (std::size_t i = 0; i < n; ++i) {
        out = pl_image_interval(map, out);
    }
    return out;
}

std::vector<RatInterval> merge_intervals(std::vector<RatInterval> ivs) {
    std::sort(ivs.begin(), ivs.end(), [](const RatInterval& a, const RatInterval& b) {
        return a.lo() < b.lo() || (a.lo() == b.lo() && a.hi() < b.hi());
    });
    std::vector<RatInterval> out;
    for (auto& iv : ivs) {
        if (!out.empty() && !(out.back().hi() < iv.lo())) {
            if (out.back().hi() < iv.hi()) {
                out.back() = RatInterval(out.back().lo(), iv.hi());
            }
        } else {
            out.push_back(std::move(iv));
        }
    }
    return out;
}

namespace {

void preimage_on_segment(const AffineSegment& seg, const RatInterval& target, std::vector<RatInterval>& out) {
    const auto& s = seg.f.slope;
    const auto& c = seg.f.intercept;
    if (s.sign() == 0) {
        if (target.contains(c)) {
            out.emplace_back(seg.lo, seg.hi);
        }
        return;
    }
    auto a = (target.lo() - c) / s;
    auto b = (target.hi() - c) / s;
    if (s.sign() < 0) {
        std::swap(a, b);
    }
    if (auto hit = RatInterval(a, b).intersect(RatInterval(seg.lo, seg.hi))) {
        out.push_back(std::move(*hit));
    }
}

} // namespace

std::vector<RatInterval> pl_preimage_interval(const PLMap1D& map, const RatInterval& target, const RatInterval& window) {
    return pl_preimage_union(map, {target}, window);
}

std::vector<RatInterval> pl_preimage_union(const PLMap1D& map, const std::vector<RatInterval>& targets,
                                           const RatInterval& window) {
    std::vector<RatInterval> pieces;
    const auto segs = map.segments_on(window.lo(), window.hi());
    for (const auto& seg : segs) {
        for (const auto& t : targets) {
            preimage_on_segment(seg, t, pieces);
        }
    }
    return merge_intervals(std::move(pieces));
}

std::vector<AffineSegment> compose_segments(const PLMap1D& map, std::size_t m, const RatInterval& iv) {
    if (m == 0) {
        return {{iv.lo(), iv.hi(), Affine{ExactScalar(1), ExactScalar(0)}}};
    }
    auto segs = map.segments_on(iv.lo(), iv.hi());
    for (std::size_t step = 1; step < m; ++step) {
        std::vector<AffineSegment> next;
        for (const auto& seg : segs) {
            const auto& s = seg.f.slope;
            const auto& c = seg.f.intercept;
            if (s.sign() == 0 || seg.lo == seg.hi) {
                const auto value = map.apply(seg.f(seg.lo));
                next.push_back({seg.lo, seg.hi, Affine{ExactScalar(0), value}});
                continue;
            }
            const auto ya = seg.f(seg.lo);
            const auto yb = seg.f(seg.hi);
            for (const auto& sub : map.segments_on(min(ya, yb), max(ya, yb))) {
                auto xa = (sub.lo - c) / s;
                auto xb = (sub.hi - c) / s;
                if (xb < xa) {
                    std::swap(xa, xb);
                }
                next.push_back({xa, xb, Affine{sub.f.slope * s, sub.f.slope * c + sub.f.intercept}});
            }
        }
        std::sort(next.begin(), next.end(), [](const AffineSegment& a, const AffineSegment& b) { return a.lo < b.lo; });
        segs = std::move(next);
    }
    return segs;
}

std::vector<ExactScalar> fixed_points_in(const PLMap1D& map, std::size_t m, const RatInterval& iv) {
    std::vector<ExactScalar> out;
    const ExactScalar one(1);
    for (const auto& seg : compose_segments(map, m, iv)) {
        if (seg.f.slope == one) {
            if (seg.f.intercept.sign() == 0) {
                out.push_back(seg.lo);
            }
            continue;
        }
        auto x = seg.f.intercept / (one - seg.f.slope);
        if (seg.lo <= x && x <= seg.hi) {
            out.push_back(std::move(x));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace escset

#include "lybound/geometry/primitives.hpp"

#include <algorithm>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace lyb::geometry {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int exact_orientation(Vec2 a, Vec2 b, Vec2 c) {
    using boost::multiprecision::cpp_rational;
    const cpp_rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    const cpp_rational det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

}  // namespace

int orientation(Vec2 a, Vec2 b, Vec2 c) {
    const double l = (b.x - a.x) * (c.y - a.y);
    const double r = (b.y - a.y) * (c.x - a.x);
    const double det = l - r;
    // Static filter: beyond this bound the sign of the rounded value is exact.
    const double bound = 1e-14 * (std::abs(l) + std::abs(r));
    if (det > bound) return 1;
    if (det < -bound) return -1;
    return exact_orientation(a, b, c);
}

double point_segment_distance(Vec2 p, const Segment& s) {
    const Vec2 d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return norm(p - s.a);
    const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
    return norm(p - (s.a + d * t));
}

namespace {

bool on_segment(Vec2 p, const Segment& s) {
    return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
           std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

}  // namespace

bool segments_intersect(const Segment& s, const Segment& t) {
    if (std::max(s.a.x, s.b.x) < std::min(t.a.x, t.b.x) ||
        std::max(t.a.x, t.b.x) < std::min(s.a.x, s.b.x) ||
        std::max(s.a.y, s.b.y) < std::min(t.a.y, t.b.y) ||
        std::max(t.a.y, t.b.y) < std::min(s.a.y, s.b.y))
        return false;
    const int o1 = orientation(s.a, s.b, t.a);
    const int o2 = orientation(s.a, s.b, t.b);
    const int o3 = orientation(t.a, t.b, s.a);
    const int o4 = orientation(t.a, t.b, s.b);
    if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
        if (o1 != 0 || o2 != 0) return true;
    }
    if (o1 == 0 && on_segment(t.a, s)) return true;
    if (o2 == 0 && on_segment(t.b, s)) return true;
    if (o3 == 0 && on_segment(s.a, t)) return true;
    if (o4 == 0 && on_segment(s.b, t)) return true;
    return false;
}

double segment_distance(const Segment& s, const Segment& t) {
    if (segments_intersect(s, t)) return 0.0;
    return std::min({point_segment_distance(s.a, t), point_segment_distance(s.b, t),
                     point_segment_distance(t.a, s), point_segment_distance(t.b, s)});
}

std::vector<Segment> polyline_segments(std::span<const Vec2> points) {
    std::vector<Segment> out;
    if (points.size() < 2) return out;
    out.reserve(points.size() - 1);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) out.push_back({points[i], points[i + 1]});
    return out;
}

SegmentGrid::SegmentGrid(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) return;
    double xmin = kInf, ymin = kInf, xmax = -kInf, ymax = -kInf;
    double total_len = 0.0;
    for (const auto& s : segments_) {
        xmin = std::min({xmin, s.a.x, s.b.x});
        xmax = std::max({xmax, s.a.x, s.b.x});
        ymin = std::min({ymin, s.a.y, s.b.y});
        ymax = std::max({ymax, s.a.y, s.b.y});
        total_len += s.length();
    }
    const double w = std::max(xmax - xmin, 1e-300);
    const double h = std::max(ymax - ymin, 1e-300);
    // Aim for a few segments per cell, bounded to keep memory modest.
    const double n = static_cast<double>(segments_.size());
    const double mean_len = total_len / n;
    double cell = std::max({mean_len * 2.0, std::sqrt(w * h / n), std::max(w, h) / 2048.0});
    if (!(cell > 0.0)) cell = 1.0;
    cell_ = cell;
    origin_ = {xmin, ymin};
    nx_ = std::max(1L, static_cast<long>(std::ceil(w / cell_)) + 1);
    ny_ = std::max(1L, static_cast<long>(std::ceil(h / cell_)) + 1);
    cells_.assign(static_cast<std::size_t>(nx_ * ny_), {});
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        const long x0 = clamp_x(std::min(s.a.x, s.b.x)), x1 = clamp_x(std::max(s.a.x, s.b.x));
        const long y0 = clamp_y(std::min(s.a.y, s.b.y)), y1 = clamp_y(std::max(s.a.y, s.b.y));
        for (long ix = x0; ix <= x1; ++ix)
            for (long iy = y0; iy <= y1; ++iy) cells_[cell_index(ix, iy)].push_back(i);
    }
}

std::size_t SegmentGrid::cell_index(long ix, long iy) const {
    return static_cast<std::size_t>(iy * nx_ + ix);
}

long SegmentGrid::clamp_x(double x) const {
    return std::clamp(static_cast<long>(std::floor((x - origin_.x) / cell_)), 0L, nx_ - 1);
}

long SegmentGrid::clamp_y(double y) const {
    return std::clamp(static_cast<long>(std::floor((y - origin_.y) / cell_)), 0L, ny_ - 1);
}

double SegmentGrid::distance_to(const Segment& q) const {
    if (segments_.empty()) return kInf;
    const double qx0 = std::min(q.a.x, q.b.x), qx1 = std::max(q.a.x, q.b.x);
    const double qy0 = std::min(q.a.y, q.b.y), qy1 = std::max(q.a.y, q.b.y);
    double radius = cell_;
    double best = kInf;
    for (;;) {
        const long x0 = clamp_x(qx0 - radius), x1 = clamp_x(qx1 + radius);
        const long y0 = clamp_y(qy0 - radius), y1 = clamp_y(qy1 + radius);
        for (long ix = x0; ix <= x1; ++ix) {
            for (long iy = y0; iy <= y1; ++iy) {
                for (std::size_t id : cells_[cell_index(ix, iy)])
                    best = std::min(best, segment_distance(q, segments_[id]));
            }
        }
        // Any segment within `radius` of q touches the scanned window.
        if (best <= radius) return best;
        const bool covers_all = x0 == 0 && y0 == 0 && x1 == nx_ - 1 && y1 == ny_ - 1;
        if (covers_all) return best;
        radius *= 2.0;
    }
}

double SegmentGrid::distance_to(std::span<const Segment> query) const {
    double best = kInf;
    for (const auto& q : query) best = std::min(best, distance_to(q));
    return best;
}

bool point_in_region(Vec2 p, std::span<const Segment> boundary) {
    bool inside = false;
    for (const auto& s : boundary) {
        const bool up = s.a.y <= p.y && s.b.y > p.y;
        const bool down = s.b.y <= p.y && s.a.y > p.y;
        if (!up && !down) continue;
        const int o = orientation(s.a, s.b, p);
        if ((up && o > 0) || (down && o < 0)) inside = !inside;
    }
    return inside;
}

}  // namespace lyb::geometry

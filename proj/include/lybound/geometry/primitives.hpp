#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace lyb::geometry {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
/// Counterclockwise normal of a direction.
constexpr Vec2 left_normal(Vec2 t) { return {-t.y, t.x}; }

struct Segment {
    Vec2 a;
    Vec2 b;
    double length() const { return norm(b - a); }
    Vec2 midpoint() const { return (a + b) * 0.5; }
};

/// Sign of the orientation determinant of (a, b, c): +1 left turn, -1 right
/// turn, 0 collinear.
int orientation(Vec2 a, Vec2 b, Vec2 c);

double point_segment_distance(Vec2 p, const Segment& s);

/// True when the closed segments share at least one point.
bool segments_intersect(const Segment& s, const Segment& t);

double segment_distance(const Segment& s, const Segment& t);

/// Segments joining consecutive points of a polyline.
std::vector<Segment> polyline_segments(std::span<const Vec2> points);

/// Uniform bucket grid over a fixed segment set answering minimum-distance
/// queries. Each segment is registered in every cell its bounding box touches.
class SegmentGrid {
public:
    explicit SegmentGrid(std::vector<Segment> segments);

    bool empty() const { return segments_.empty(); }
    std::size_t size() const { return segments_.size(); }

    /// Minimum distance from q to the set, +inf when the set is empty.
    double distance_to(const Segment& q) const;

    /// Minimum distance from any segment of a polyline to the set.
    double distance_to(std::span<const Segment> query) const;

private:
    std::size_t cell_index(long ix, long iy) const;
    long clamp_x(double x) const;
    long clamp_y(double y) const;

    std::vector<Segment> segments_;
    std::vector<std::vector<std::size_t>> cells_;
    Vec2 origin_;
    double cell_ = 1.0;
    long nx_ = 1;
    long ny_ = 1;
};

/// Crossing-parity point-in-region test against a closed set of segments.
bool point_in_region(Vec2 p, std::span<const Segment> boundary);

}  // namespace lyb::geometry

#include "lybound/geometry/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lybound/errors.hpp"

namespace lyb::geometry {

namespace {

double shoelace_twice_area(std::span<const Vec2> v) {
    const Vec2 o = v[0];
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i] - o;
        const Vec2 b = v[(i + 1) % v.size()] - o;
        s += cross(a, b);
    }
    return s;
}

}  // namespace

Polygon::Polygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) throw InputError("polygon needs at least 3 vertices");
    for (const auto& v : vertices_)
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw InputError("non-finite polygon vertex");
    for (std::size_t j = 0; j < n; ++j)
        if (vertices_[j] == vertices_[(j + 1) % n])
            throw InputError("zero-length side " + std::to_string(j));

    // Adjacent sides may only meet at their shared vertex.
    for (std::size_t j = 0; j < n; ++j) {
        const Vec2 a = vertices_[j], b = vertices_[(j + 1) % n], c = vertices_[(j + 2) % n];
        if (orientation(a, b, c) == 0 && dot(b - a, c - b) < 0.0)
            throw InputError("polygon folds back on itself at vertex " + std::to_string((j + 1) % n));
    }
    const auto s = sides();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(s[i], s[j]))
                throw InputError("polygon is not simple: sides " + std::to_string(i) + " and " +
                                 std::to_string(j) + " intersect");
        }
    }
    const double twice = shoelace_twice_area(vertices_);
    if (twice == 0.0) throw InputError("polygon has zero area");
    if (twice < 0.0) throw InputError("polygon is clockwise; counterclockwise order required");
}

Segment Polygon::side(std::size_t j) const {
    return {vertices_[j % size()], vertices_[(j + 1) % size()]};
}

std::vector<Segment> Polygon::sides() const {
    std::vector<Segment> out;
    out.reserve(size());
    for (std::size_t j = 0; j < size(); ++j) out.push_back(side(j));
    return out;
}

double Polygon::area() const { return 0.5 * shoelace_twice_area(vertices_); }

double Polygon::perimeter() const {
    double p = 0.0;
    for (std::size_t j = 0; j < size(); ++j) p += side(j).length();
    return p;
}

Polygon Polygon::transformed(double angle, Vec2 shift, double scale) const {
    const double c = std::cos(angle), s = std::sin(angle);
    std::vector<Vec2> out;
    out.reserve(size());
    for (const auto& v : vertices_) out.push_back(Vec2{c * v.x - s * v.y, s * v.x + c * v.y} * scale + shift);
    return Polygon(std::move(out));
}

Polygon Polygon::rectangle(double a, double b, Vec2 origin) {
    if (!(a > 0.0) || !(b > 0.0)) throw InputError("rectangle sides must be positive");
    return Polygon({origin, origin + Vec2{a, 0.0}, origin + Vec2{a, b}, origin + Vec2{0.0, b}});
}

Polygon Polygon::regular(std::size_t n, double area, Vec2 center) {
    if (n < 3 || !(area > 0.0)) throw InputError("regular polygon needs n >= 3 and positive area");
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    const double r = std::sqrt(2.0 * area / (static_cast<double>(n) * std::sin(step)));
    std::vector<Vec2> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = step * static_cast<double>(i);
        v.push_back(center + Vec2{r * std::cos(t), r * std::sin(t)});
    }
    return Polygon(std::move(v));
}

PolygonMetrics polygon_metrics(const Polygon& p) {
    PolygonMetrics m;
    const auto v = p.vertices();
    const Vec2 o = v[0];
    double twice = 0.0;
    Vec2 acc{};
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i] - o;
        const Vec2 b = v[(i + 1) % v.size()] - o;
        const double c = cross(a, b);
        twice += c;
        acc += (a + b) * c;
    }
    m.area = 0.5 * twice;
    m.centroid = o + acc / (3.0 * twice);
    m.sides.reserve(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) {
        m.sides.push_back(p.side(j).length());
        m.perimeter += m.sides.back();
    }
    return m;
}

double polar_moment_about(const Polygon& p, Vec2 a) {
    const auto v = p.vertices();
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 u = v[i] - a;
        const Vec2 w = v[(i + 1) % v.size()] - a;
        const double c = cross(u, w);
        s += c * (u.x * u.x + u.x * w.x + w.x * w.x + u.y * u.y + u.y * w.y + w.y * w.y);
    }
    return s / 12.0;
}

Inertia moment_of_inertia(const Polygon& p) {
    const Vec2 c = polygon_metrics(p).centroid;
    return {polar_moment_about(p, c), c};
}

double middle_third_distance(const Polygon& p, std::size_t j) {
    if (j >= p.size()) throw InputError("side index out of range");
    const Segment s = p.side(j);
    const Vec2 d = s.b - s.a;
    const Segment middle{s.a + d / 3.0, s.a + d * (2.0 / 3.0)};
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k == j) continue;
        best = std::min(best, segment_distance(middle, p.side(k)));
    }
    return best;
}

double polygon_side_threshold(const Polygon& p, std::size_t j) {
    const double d = middle_third_distance(p, j);
    if (d <= kDegenerateDistance) return std::numeric_limits<double>::infinity();
    return 9.0 * p.area() / (2.0 * std::numbers::pi * d * d);
}

long square_count_lower(double length, double lambda, bool polygon_case) {
    if (!(length >= 0.0) || !(lambda >= 0.0)) throw InputError("square count needs nonnegative inputs");
    // l sqrt(lambda) / (3 sqrt 2) = l sqrt(lambda / 18), smooth case divides by 9 sqrt 2.
    const double x = length * std::sqrt(lambda / (polygon_case ? 18.0 : 162.0));
    return static_cast<long>(std::floor(x * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())));
}

bool is_axis_aligned_rectangle(const Polygon& p, double* width, double* height) {
    if (p.size() != 4) return false;
    for (std::size_t j = 0; j < 4; ++j) {
        const Segment s = p.side(j);
        if (s.a.x != s.b.x && s.a.y != s.b.y) return false;
    }
    const auto v = p.vertices();
    const auto [xmin, xmax] = std::minmax({v[0].x, v[1].x, v[2].x, v[3].x});
    const auto [ymin, ymax] = std::minmax({v[0].y, v[1].y, v[2].y, v[3].y});
    if (width) *width = xmax - xmin;
    if (height) *height = ymax - ymin;
    return true;
}

bool strictly_inside(const Polygon& p, Vec2 q) {
    const auto sides = p.sides();
    for (const auto& s : sides) {
        if (orientation(s.a, s.b, q) != 0) continue;
        if (std::min(s.a.x, s.b.x) <= q.x && q.x <= std::max(s.a.x, s.b.x) && std::min(s.a.y, s.b.y) <= q.y &&
            q.y <= std::max(s.a.y, s.b.y))
            return false;
    }
    return point_in_region(q, sides);
}

}  // namespace lyb::geometry

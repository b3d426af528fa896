#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lybound/geometry/primitives.hpp"

namespace lyb::geometry {

/// Simple counterclockwise polygon. The constructor rejects fewer than three
/// vertices, self-intersections, clockwise orientation and zero area.
class Polygon {
public:
    explicit Polygon(std::vector<Vec2> vertices);

    std::span<const Vec2> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    /// Side j joins vertex j to vertex j+1 (cyclically).
    Segment side(std::size_t j) const;
    std::vector<Segment> sides() const;

    double area() const;
    double perimeter() const;

    /// Rigid motion / scaling helpers used by invariance checks.
    Polygon transformed(double angle, Vec2 shift, double scale = 1.0) const;

    static Polygon rectangle(double a, double b, Vec2 origin = {0.0, 0.0});
    static Polygon regular(std::size_t n, double area, Vec2 center = {0.0, 0.0});

private:
    std::vector<Vec2> vertices_;
};

struct PolygonMetrics {
    double area = 0.0;
    std::vector<double> sides;
    double perimeter = 0.0;
    Vec2 centroid;
};

PolygonMetrics polygon_metrics(const Polygon& p);

struct Inertia {
    double value = 0.0;  ///< min over a of the integral of |x-a|^2
    Vec2 center;         ///< the minimiser (area centroid)
};

Inertia moment_of_inertia(const Polygon& p);

/// Integral of |x - a|^2 over the polygon, evaluated directly about `a`.
double polar_moment_about(const Polygon& p, Vec2 a);

/// Distance from the closed middle third of side j to the union of all other
/// closed sides. Values at or below kDegenerateDistance are degenerate.
double middle_third_distance(const Polygon& p, std::size_t j);

inline constexpr double kDegenerateDistance = 1e-12;

/// 9V / (2 pi d_j^2); +inf for a degenerate side so its step never switches on.
double polygon_side_threshold(const Polygon& p, std::size_t j);

/// Lower bound on the number of boundary squares on a side (polygon case,
/// divisor 3*sqrt(2)) or a smooth piece (divisor 9*sqrt(2)).
long square_count_lower(double length, double lambda, bool polygon_case);

/// Exact test for points strictly inside; points on a side are outside.
bool strictly_inside(const Polygon& p, Vec2 q);

/// Axis-aligned rectangle test (sides parallel to coordinate axes).
bool is_axis_aligned_rectangle(const Polygon& p, double* width = nullptr, double* height = nullptr);

}  // namespace lyb::geometry

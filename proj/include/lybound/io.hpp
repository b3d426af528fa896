#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lybound/geometry/arc.hpp"
#include "lybound/geometry/polygon.hpp"

namespace lyb::io {

using nlohmann::json;

/// {"vertices": [[x, y], ...]}
geometry::Polygon polygon_from_json(const json& j);
json polygon_to_json(const geometry::Polygon& p);

/// {"samples": [[s, x, y, kappa], ...]} or
/// {"primitive": "circle", "center": [x, y], "radius": r, "theta0": t0, "theta1": t1, "nsamples": n} or
/// {"primitive": "ellipse", "center": [x, y], "a": a, "b": b, "t0": t0, "t1": t1, "nsamples": n}.
/// Angles default to a full turn and nsamples to 512.
geometry::SmoothArc arc_from_json(const json& j);

enum class DomainKind { Polygon, Disk, Smooth };

/// A polygon ({"vertices"}), a disk ({"disk": {"radius": R}}) or a closed
/// boundary of smooth arcs ({"arcs": [...]}).
struct Domain {
    DomainKind kind = DomainKind::Polygon;
    std::optional<geometry::Polygon> polygon;
    double radius = 0.0;
    std::vector<geometry::SmoothArc> arcs;

    double area() const;
    double inertia() const;
    double perimeter() const;
    /// Boundary as smooth arcs (a disk becomes one closed circle).
    std::vector<geometry::SmoothArc> boundary_arcs() const;
};

Domain domain_from_json(const json& j);
/// Reads and parses a JSON file. InputError on I/O or format problems.
json read_json_file(const std::string& path);

}  // namespace lyb::io

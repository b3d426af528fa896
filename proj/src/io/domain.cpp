#include "lybound/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "lybound/errors.hpp"

namespace lyb::io {

namespace {

constexpr double kPi = std::numbers::pi;

geometry::Vec2 vec(const json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("expected a point [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

// Vertices of the polyline through all arc samples, without repeated joints.
std::vector<geometry::Vec2> boundary_points(const std::vector<geometry::SmoothArc>& arcs) {
    std::vector<geometry::Vec2> pts;
    for (const auto& a : arcs)
        for (const auto& s : a.samples())
            if (pts.empty() || !(pts.back() == s.point)) pts.push_back(s.point);
    if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
    return pts;
}

geometry::Polygon boundary_polygon(const std::vector<geometry::SmoothArc>& arcs) {
    auto pts = boundary_points(arcs);
    double twice = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) twice += geometry::cross(pts[i], pts[(i + 1) % pts.size()]);
    if (twice < 0.0) std::reverse(pts.begin(), pts.end());
    return geometry::Polygon(std::move(pts));
}

}  // namespace

geometry::Polygon polygon_from_json(const json& j) {
    try {
        if (!j.contains("vertices")) throw InputError("polygon needs \"vertices\"");
        std::vector<geometry::Vec2> v;
        for (const auto& p : j.at("vertices")) v.push_back(vec(p));
        return geometry::Polygon(std::move(v));
    } catch (const json::exception& e) {
        throw InputError(std::string("polygon JSON: ") + e.what());
    }
}

json polygon_to_json(const geometry::Polygon& p) {
    json v = json::array();
    for (const auto& q : p.vertices()) v.push_back({q.x, q.y});
    return {{"vertices", v}};
}

geometry::SmoothArc arc_from_json(const json& j) {
    try {
        if (j.contains("samples")) {
            std::vector<geometry::ArcSample> s;
            for (const auto& row : j.at("samples")) {
                if (row.size() != 4) throw InputError("arc sample must be [s, x, y, kappa]");
                s.push_back({row[0].get<double>(), {row[1].get<double>(), row[2].get<double>()}, row[3].get<double>()});
            }
            return geometry::SmoothArc(std::move(s));
        }
        const auto kind = j.at("primitive").get<std::string>();
        const auto n = j.value("nsamples", std::size_t{512});
        const geometry::Vec2 c = j.contains("center") ? vec(j.at("center")) : geometry::Vec2{};
        if (kind == "circle")
            return geometry::SmoothArc::circle(c, j.at("radius").get<double>(), j.value("theta0", 0.0),
                                               j.value("theta1", 2.0 * kPi), n);
        if (kind == "ellipse")
            return geometry::SmoothArc::ellipse(c, j.at("a").get<double>(), j.at("b").get<double>(), j.value("t0", 0.0),
                                                j.value("t1", 2.0 * kPi), n);
        throw InputError("unknown arc primitive \"" + kind + "\"");
    } catch (const json::exception& e) {
        throw InputError(std::string("arc JSON: ") + e.what());
    }
}

Domain domain_from_json(const json& j) {
    Domain d;
    try {
        if (j.contains("vertices")) {
            d.kind = DomainKind::Polygon;
            d.polygon = polygon_from_json(j);
        } else if (j.contains("disk")) {
            d.kind = DomainKind::Disk;
            d.radius = j.at("disk").at("radius").get<double>();
            if (!(d.radius > 0.0)) throw InputError("disk radius must be positive");
        } else if (j.contains("arcs")) {
            d.kind = DomainKind::Smooth;
            for (const auto& a : j.at("arcs")) d.arcs.push_back(arc_from_json(a));
            if (d.arcs.empty()) throw InputError("smooth domain needs at least one arc");
            d.polygon = boundary_polygon(d.arcs);
        } else {
            throw InputError("domain JSON needs \"vertices\", \"disk\" or \"arcs\"");
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("domain JSON: ") + e.what());
    }
    return d;
}

double Domain::area() const { return kind == DomainKind::Disk ? kPi * radius * radius : polygon->area(); }

double Domain::inertia() const {
    return kind == DomainKind::Disk ? 0.5 * kPi * std::pow(radius, 4) : geometry::moment_of_inertia(*polygon).value;
}

double Domain::perimeter() const {
    if (kind == DomainKind::Disk) return 2.0 * kPi * radius;
    if (kind == DomainKind::Smooth) {
        double l = 0.0;
        for (const auto& a : arcs) l += a.length();
        return l;
    }
    return polygon->perimeter();
}

std::vector<geometry::SmoothArc> Domain::boundary_arcs() const {
    if (kind == DomainKind::Disk) return {geometry::SmoothArc::circle({0.0, 0.0}, radius, 0.0, 2.0 * kPi, 1024)};
    return arcs;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace lyb::io

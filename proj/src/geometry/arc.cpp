#include "lybound/geometry/arc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lybound/errors.hpp"

namespace lyb::geometry {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// floor() that forgives a few ulps below an integer.
long tolerant_floor(double x) {
    return static_cast<long>(std::floor(x * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())));
}

double signed_circumcurvature(Vec2 a, Vec2 b, Vec2 c) {
    const double ab = norm(b - a), bc = norm(c - b), ca = norm(a - c);
    const double denom = ab * bc * ca;
    if (denom == 0.0) return 0.0;
    return 2.0 * cross(b - a, c - b) / denom;
}

}  // namespace

SmoothArc::SmoothArc(std::vector<ArcSample> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2) throw InputError("arc needs at least 2 samples");
    if (samples_.front().s != 0.0) throw InputError("arc arclength must start at 0");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& q = samples_[i];
        if (!std::isfinite(q.s) || !std::isfinite(q.point.x) || !std::isfinite(q.point.y) ||
            !std::isfinite(q.kappa))
            throw InputError("non-finite arc sample");
        max_kappa_ = std::max(max_kappa_, std::abs(q.kappa));
        if (i == 0) continue;
        const double ds = q.s - samples_[i - 1].s;
        if (!(ds > 0.0)) throw InputError("arc arclength must be strictly increasing");
        const double chord = norm(q.point - samples_[i - 1].point);
        if (chord > ds * (1.0 + 1e-12) + 1e-15)
            throw InputError("arc sample chord exceeds its arclength step at sample " + std::to_string(i));
    }
}

SmoothArc SmoothArc::from_points(std::span<const Vec2> points) {
    if (points.size() < 3) throw InputError("curvature estimation needs at least 3 points");
    const bool closed = points.front() == points.back();
    const std::size_t n = points.size();
    std::vector<ArcSample> out(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) s += norm(points[i] - points[i - 1]);
        out[i].s = s;
        out[i].point = points[i];
    }
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i].kappa = signed_circumcurvature(points[i - 1], points[i], points[i + 1]);
    if (closed) {
        const double k = signed_circumcurvature(points[n - 2], points[0], points[1]);
        out.front().kappa = k;
        out.back().kappa = k;
    } else {
        out.front().kappa = out[1].kappa;
        out.back().kappa = out[n - 2].kappa;
    }
    return SmoothArc(std::move(out));
}

SmoothArc SmoothArc::circle(Vec2 center, double radius, double theta0, double theta1, std::size_t nsamples) {
    if (!(radius > 0.0)) throw InputError("circle radius must be positive");
    if (nsamples < 2 || theta0 == theta1) throw InputError("circle arc needs >= 2 samples and a nonzero sweep");
    const double sweep = theta1 - theta0;
    const double kappa = (sweep > 0.0 ? 1.0 : -1.0) / radius;
    std::vector<ArcSample> out(nsamples);
    for (std::size_t i = 0; i < nsamples; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(nsamples - 1);
        const double t = theta0 + sweep * f;
        out[i].s = radius * std::abs(sweep) * f;
        out[i].point = center + Vec2{radius * std::cos(t), radius * std::sin(t)};
        out[i].kappa = kappa;
    }
    if (std::abs(std::abs(sweep) - 2.0 * kPi) < 1e-15) out.back().point = out.front().point;
    return SmoothArc(std::move(out));
}

SmoothArc SmoothArc::ellipse(Vec2 center, double a, double b, double t0, double t1, std::size_t nsamples) {
    if (!(a > 0.0) || !(b > 0.0)) throw InputError("ellipse semi-axes must be positive");
    if (nsamples < 2 || t0 == t1) throw InputError("ellipse arc needs >= 2 samples and a nonzero sweep");
    const double dir = t1 > t0 ? 1.0 : -1.0;
    auto speed = [&](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); };

    // Cumulative arclength table by 5-point Gauss-Legendre on fine cells.
    static constexpr double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                     0.9061798459386640};
    static constexpr double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                     0.4786286704993665, 0.2369268850561891};
    const std::size_t cells = 64 * nsamples;
    const double dt = (t1 - t0) / static_cast<double>(cells);
    std::vector<double> table(cells + 1, 0.0);
    for (std::size_t c = 0; c < cells; ++c) {
        const double mid = t0 + (static_cast<double>(c) + 0.5) * dt;
        double acc = 0.0;
        for (int q = 0; q < 5; ++q) acc += gw[q] * speed(mid + 0.5 * dt * gx[q]);
        table[c + 1] = table[c] + 0.5 * std::abs(dt) * acc;
    }
    auto arclength = [&](double t) {
        // Partial cell integral from the table node below t.
        const double pos = (t - t0) / dt;
        const auto c = std::min(static_cast<std::size_t>(std::max(pos, 0.0)), cells - 1);
        const double ta = t0 + static_cast<double>(c) * dt;
        const double h = t - ta;
        double acc = 0.0;
        for (int q = 0; q < 5; ++q) acc += gw[q] * speed(ta + 0.5 * h * (1.0 + gx[q]));
        return table[c] + 0.5 * std::abs(h) * acc * (h * dt >= 0.0 ? 1.0 : -1.0);
    };

    const double total = table.back();
    std::vector<ArcSample> out(nsamples);
    for (std::size_t i = 0; i < nsamples; ++i) {
        const double target = total * static_cast<double>(i) / static_cast<double>(nsamples - 1);
        double t;
        if (i == 0) {
            t = t0;
        } else if (i + 1 == nsamples) {
            t = t1;
        } else {
            const auto it = std::lower_bound(table.begin(), table.end(), target);
            const auto c = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - table.begin() - 1, 0));
            t = t0 + (static_cast<double>(c) + (target - table[c]) / (table[c + 1] - table[c])) * dt;
            for (int iter = 0; iter < 8; ++iter) {
                const double err = arclength(t) - target;
                t -= dir * err / speed(t);
                if (std::abs(err) < 1e-15 * total) break;
            }
        }
        const double st = std::sin(t), ct = std::cos(t);
        out[i].s = target;
        out[i].point = center + Vec2{a * ct, b * st};
        out[i].kappa = dir * a * b / std::pow(a * a * st * st + b * b * ct * ct, 1.5);
    }
    if (std::abs(std::abs(t1 - t0) - 2.0 * kPi) < 1e-15) out.back().point = out.front().point;
    return SmoothArc(std::move(out));
}

SmoothArc SmoothArc::segment(Vec2 from, Vec2 to, std::size_t nsamples) {
    if (nsamples < 2 || from == to) throw InputError("segment arc needs >= 2 samples and distinct ends");
    const double len = norm(to - from);
    std::vector<ArcSample> out(nsamples);
    for (std::size_t i = 0; i < nsamples; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(nsamples - 1);
        out[i].s = len * f;
        out[i].point = from + (to - from) * f;
        out[i].kappa = 0.0;
    }
    return SmoothArc(std::move(out));
}

bool SmoothArc::closed() const { return norm(end() - start()) <= 1e-12 * std::max(1.0, length()); }

Vec2 SmoothArc::point_at(double s) const {
    s = std::clamp(s, 0.0, length());
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), s,
                                     [](double v, const ArcSample& q) { return v < q.s; });
    if (it == samples_.end()) return samples_.back().point;
    if (it == samples_.begin()) return samples_.front().point;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double f = (s - lo.s) / (hi.s - lo.s);
    return lo.point + (hi.point - lo.point) * f;
}

std::vector<Vec2> SmoothArc::polyline(double s0, double s1) const {
    if (s1 < s0) std::swap(s0, s1);
    std::vector<Vec2> out;
    out.push_back(point_at(s0));
    for (const auto& q : samples_)
        if (q.s > s0 && q.s < s1) out.push_back(q.point);
    out.push_back(point_at(s1));
    return out;
}

std::vector<Segment> SmoothArc::segments(double s0, double s1) const {
    const auto pts = polyline(s0, s1);
    return polyline_segments(pts);
}

ArcPartition arc_partition(const SmoothArc& arc, std::span<const Segment> rest) {
    const double len = arc.length();
    const double kappa = arc.max_curvature();
    ArcPartition part;
    const bool three = kappa == 0.0 || 8.0 * len * kappa <= 3.0 * kPi;
    const std::size_t n = three ? 3 : static_cast<std::size_t>(tolerant_floor(8.0 * len * kappa / kPi));
    part.kase = three ? PartitionCase::ThreeParts : PartitionCase::ManyParts;
    part.breakpoints.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        part.breakpoints[i] = len * static_cast<double>(i) / static_cast<double>(n);
    part.breakpoints.back() = len;

    const auto& a = part.breakpoints;
    if (three) {
        const SegmentGrid grid(std::vector<Segment>(rest.begin(), rest.end()));
        part.gaps.push_back(grid.distance_to(arc.segments(a[1], a[2])));
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            // Remainder: rest of the boundary plus the arc outside (a_{i-1}, a_{i+2}).
            std::vector<Segment> other(rest.begin(), rest.end());
            const auto head = arc.segments(0.0, a[i - 1]);
            const auto tail = arc.segments(a[i + 2], len);
            other.insert(other.end(), head.begin(), head.end());
            other.insert(other.end(), tail.begin(), tail.end());
            const SegmentGrid grid(std::move(other));
            part.gaps.push_back(grid.distance_to(arc.segments(a[i], a[i + 1])));
        }
    }
    part.d = part.gaps.empty() ? kInf : *std::min_element(part.gaps.begin(), part.gaps.end());
    part.unbounded = std::isinf(part.d);
    return part;
}

KjThreshold kj_threshold(double kappa_j, double d_j, double area, double global_max_kappa, double c1) {
    if (!(area > 0.0) || !(c1 > 0.0) || kappa_j < 0.0 || d_j < 0.0)
        throw InputError("k_j threshold needs positive area and c1, nonnegative curvature and gap");
    KjThreshold t;
    t.lambda1 = 9.0 * 1024.0 * global_max_kappa * global_max_kappa;
    t.lambda2 = std::ldexp(c1, 64) / area;
    t.lambda3_curv = std::ldexp(std::pow(6.0, 8) * std::pow(kappa_j, 4) * area / c1, 22);
    t.lambda3 = std::max({t.lambda1, t.lambda2, t.lambda3_curv});
    t.curvature_term = 128.0 * kappa_j * kappa_j / (kPi * kPi);
    if (d_j <= 1e-12) {
        t.gap_term = kInf;
        t.mixed_term = kInf;
        t.k_j = kInf;
        return t;
    }
    t.gap_term = std::isinf(d_j) ? 0.0 : 9.0 / (d_j * d_j);
    t.mixed_term = std::isinf(d_j) ? 0.0 : 6.0 * kappa_j / d_j;
    t.k_j = area / (2.0 * kPi) * std::max({t.lambda3, t.gap_term, t.curvature_term, t.mixed_term});
    return t;
}

ChordCheck chord_graph_check(const SmoothArc& arc, double s1, double s2) {
    ChordCheck out;
    if (s2 < s1) std::swap(s1, s2);
    s1 = std::max(s1, 0.0);
    s2 = std::min(s2, arc.length());
    const double span = s2 - s1;
    const double kappa0 = arc.max_curvature();
    out.precondition = kappa0 * span <= 0.25 * kPi * (1.0 + 1e-12);
    if (!out.precondition) {
        out.diagnostic = "precondition kappa0 |s'-s''| <= pi/4 violated";
        return out;
    }
    if (!(span > 0.0)) {
        out.diagnostic = "empty sub-arc";
        return out;
    }
    const Vec2 A = arc.point_at(s1);
    const Vec2 B = arc.point_at(s2);
    out.chord = norm(B - A);
    if (out.chord == 0.0) {
        out.diagnostic = "sub-arc endpoints coincide";
        return out;
    }
    const Vec2 t = (B - A) / out.chord;
    const Vec2 n = left_normal(t);
    const auto pts = arc.polyline(s1, s2);
    out.is_graph = true;
    double prev_u = -kInf;
    for (const auto& p : pts) {
        const double u = dot(p - A, t);
        const double v = dot(p - A, n);
        if (!(u > prev_u)) out.is_graph = false;
        prev_u = u;
        out.max_offset = std::max(out.max_offset, std::abs(v));
    }
    out.chord_bounds = span / std::sqrt(2.0) <= out.chord && out.chord <= span * (1.0 + 1e-12);
    out.sagitta_bound = out.max_offset <= std::sqrt(2.0) * kappa0 * out.chord * out.chord + 1e-15;
    out.ok = out.is_graph && out.chord_bounds && out.sagitta_bound;
    if (!out.is_graph) out.diagnostic = "sub-arc is not a graph over its chord in the samples";
    else if (!out.chord_bounds) out.diagnostic = "chord length outside [|s'-s''|/sqrt2, |s'-s''|]";
    else if (!out.sagitta_bound) out.diagnostic = "offset from chord exceeds sqrt2 kappa0 u0^2";
    return out;
}

std::array<Vec2, 4> OrientedSquare::corners() const {
    const Vec2 t = tangent * (0.5 * side);
    const Vec2 n = normal * (0.5 * side);
    return {center - t - n, center + t - n, center + t + n, center - t + n};
}

namespace {

void project(const OrientedSquare& q, Vec2 axis, double& lo, double& hi) {
    lo = kInf;
    hi = -kInf;
    for (const auto& c : q.corners()) {
        const double v = dot(c, axis);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
}

bool separated(const OrientedSquare& p, const OrientedSquare& q) {
    for (const Vec2 axis : {p.tangent, p.normal, q.tangent, q.normal}) {
        double plo, phi, qlo, qhi;
        project(p, axis, plo, phi);
        project(q, axis, qlo, qhi);
        if (phi < qlo || qhi < plo) return true;
    }
    return false;
}

std::string threshold_message(const char* what, double lhs, double rhs) {
    std::ostringstream os;
    os << "lambda threshold violated: " << what << " (" << lhs << " vs " << rhs << ")";
    return os.str();
}

}  // namespace

bool squares_disjoint(std::span<const OrientedSquare> squares) {
    struct Box {
        double xlo, xhi;
        std::size_t id;
    };
    std::vector<Box> boxes;
    boxes.reserve(squares.size());
    for (std::size_t i = 0; i < squares.size(); ++i) {
        double lo = kInf, hi = -kInf;
        for (const auto& c : squares[i].corners()) {
            lo = std::min(lo, c.x);
            hi = std::max(hi, c.x);
        }
        boxes.push_back({lo, hi, i});
    }
    std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) { return a.xlo < b.xlo; });
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size() && boxes[j].xlo <= boxes[i].xhi; ++j)
            if (!separated(squares[boxes[i].id], squares[boxes[j].id])) return false;
    }
    return true;
}

Tiling tile_arc(const SmoothArc& arc, const ArcPartition& partition, double lambda,
                std::span<const Segment> rest) {
    if (!(lambda > 0.0)) throw InputError("lambda must be positive");
    const double r = 1.0 / std::sqrt(lambda);
    const double kappa = arc.max_curvature();
    const double d = partition.d;
    const double len = arc.length();

    if (!(r <= d / 3.0)) throw ThresholdError(threshold_message("lambda^{-1/2} <= d_j/3", r, d / 3.0));
    if (partition.kase == PartitionCase::ManyParts) {
        const double cap = kPi / (8.0 * std::sqrt(2.0) * kappa);
        if (!(r <= cap))
            throw ThresholdError(threshold_message("lambda^{-1/2} <= pi/(8 sqrt2 kappa_j)", r, cap));
    } else {
        const double cap = len / (3.0 * std::sqrt(2.0));
        if (!(r <= cap)) throw ThresholdError(threshold_message("lambda^{-1/2} <= L/(3 sqrt2)", r, cap));
    }
    const double gap_bound = std::isinf(d) ? 0.0 : 6.0 * kappa / d;
    if (!(lambda > gap_bound)) throw ThresholdError(threshold_message("lambda > 6 kappa_j / d_j", lambda, gap_bound));

    std::vector<Segment> boundary = arc.segments();
    boundary.insert(boundary.end(), rest.begin(), rest.end());
    if (rest.empty() && !arc.closed())
        throw InputError("tiling needs a closed boundary (arc plus rest) to find the interior side");

    Tiling out;
    out.lambda = lambda;
    const double step = std::sqrt(2.0) * r;
    const double lift = std::ldexp(kappa, 1) * std::sqrt(2.0) / lambda;  // 2^{3/2} kappa / lambda
    const double side = 0.5 * r;
    const std::size_t n = partition.pieces();
    const std::size_t first = 1;
    const std::size_t last = partition.kase == PartitionCase::ThreeParts ? 1 : n - 2;
    for (std::size_t i = first; i <= last; ++i) {
        const double a0 = partition.breakpoints[i];
        const double a1 = partition.breakpoints[i + 1];
        const long count = tolerant_floor((a1 - a0) / step);
        PieceCoverage cov{i, a1 - a0, 0.0};
        for (long q = 0; q < count; ++q) {
            const double b = a0 + static_cast<double>(q) * step;
            const double b2 = std::min(b + step, a1);
            out.arcs.push_back({b, b2, i});
            cov.covered += b2 - b;

            const Vec2 A = arc.point_at(b), B = arc.point_at(b2);
            const Vec2 t = (B - A) / norm(B - A);
            Vec2 inward = left_normal(t);
            const Vec2 mid = (A + B) * 0.5;
            if (!point_in_region(mid + inward * (lift + 0.25 * r), boundary)) inward = inward * -1.0;
            // Outer edge on the exterior offset line, body toward the interior.
            out.squares.push_back({mid + inward * (0.5 * side - lift), t, inward, side});
        }
        out.coverage.push_back(cov);
    }
    out.disjoint = squares_disjoint(out.squares);
    return out;
}

ExtendedVolume extended_volume_bound(std::span<const SmoothArc> arcs, double area, double lambda) {
    if (!(area > 0.0) || !(lambda > 0.0)) throw InputError("extended volume needs positive area and lambda");
    ExtendedVolume out;
    double sum = 0.0, kmax = 0.0;
    for (const auto& arc : arcs) {
        sum += arc.max_curvature() * arc.length();
        kmax = std::max(kmax, arc.max_curvature());
    }
    out.bound = area + 2.0 * std::sqrt(2.0) / lambda * sum;
    out.lambda1 = 9.0 * 1024.0 * kmax * kmax;
    out.doubled_ok = lambda >= out.lambda1;
    out.bound_within_double = out.bound <= 2.0 * area;
    return out;
}

}  // namespace lyb::geometry

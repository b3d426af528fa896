#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lybound/constants.hpp"
#include "lybound/errors.hpp"
#include "lybound/geometry/arc.hpp"
#include "lybound/geometry/polygon.hpp"

using namespace lyb::geometry;
using lyb::InputError;
using lyb::ThresholdError;
using std::numbers::pi;

namespace {

// Second moment about a by fan triangulation and the exact degree-2 edge
// midpoint rule on each triangle.
double fan_moment(const Polygon& p, Vec2 a) {
    const auto v = p.vertices();
    double total = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const Vec2 A = v[0], B = v[i], C = v[i + 1];
        const double area = 0.5 * cross(B - A, C - A);
        auto q = [&](Vec2 x) { return dot(x - a, x - a); };
        total += area / 3.0 * (q((A + B) * 0.5) + q((B + C) * 0.5) + q((C + A) * 0.5));
    }
    return total;
}

Polygon random_star(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    // Jittered angles keep every angular gap below pi, so the origin stays inside.
    std::vector<Vec2> v;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * pi * (static_cast<double>(i) + 0.5 + 0.4 * (u(rng) - 0.5)) / static_cast<double>(n);
        const double r = 0.2 + u(rng);
        v.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return Polygon(std::move(v));
}

std::vector<Segment> unit_square_rest() {
    return {{{1, 0}, {1, 1}}, {{1, 1}, {0, 1}}, {{0, 1}, {0, 0}}};
}

}  // namespace

TEST_CASE("polygon metrics") {
    const auto sq = Polygon::rectangle(1, 1);
    const auto m = polygon_metrics(sq);
    CHECK(m.area == 1.0);
    CHECK(m.perimeter == 4.0);
    CHECK(m.sides == std::vector<double>{1, 1, 1, 1});
    CHECK(m.centroid.x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.centroid.y == doctest::Approx(0.5).epsilon(1e-15));

    const Polygon tri({{0, 0}, {4, 0}, {0, 3}});
    CHECK(tri.area() == 6.0);
    CHECK(tri.perimeter() == 12.0);

    CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}, {2, 2}}), InputError);
    CHECK_THROWS_AS(Polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), InputError);  // clockwise
    CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), InputError);  // bow tie
    CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}}), InputError);
}

TEST_CASE("moment of inertia") {
    const auto sq = Polygon::rectangle(1, 1);
    const auto I = moment_of_inertia(sq);
    CHECK(I.value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(I.center.x == doctest::Approx(0.5));

    const auto moved = sq.transformed(0.0, {10, 10});
    const auto Im = moment_of_inertia(moved);
    CHECK(Im.value == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(Im.center.x == doctest::Approx(10.5).epsilon(1e-14));
    CHECK(Im.center.y == doctest::Approx(10.5).epsilon(1e-14));

    const auto disk = Polygon::regular(256, 1.0);
    CHECK(disk.area() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(moment_of_inertia(disk).value * 2.0 * pi - 1.0) < 5e-3);
}

TEST_CASE("inertia matches an independent quadrature and the parallel-axis identity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_star(rng, 3 + trial % 17);
        const auto I = moment_of_inertia(p);
        CHECK(I.value == doctest::Approx(fan_moment(p, I.center)).epsilon(1e-11));
        const Vec2 a{u(rng), u(rng)};
        const Vec2 d = a - I.center;
        CHECK(polar_moment_about(p, a) == doctest::Approx(I.value + p.area() * dot(d, d)).epsilon(1e-11));
        CHECK(I.value >= p.area() * p.area() / (2.0 * pi));
    }
}

TEST_CASE("rigid motions and scaling") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_star(rng, 5 + trial % 9);
        const auto q = p.transformed(u(rng), {u(rng), u(rng)});
        CHECK(q.area() == doctest::Approx(p.area()).epsilon(1e-12));
        CHECK(moment_of_inertia(q).value == doctest::Approx(moment_of_inertia(p).value).epsilon(1e-12));
        for (std::size_t j = 0; j < p.size(); ++j) {
            CHECK(q.side(j).length() == doctest::Approx(p.side(j).length()).epsilon(1e-12));
            CHECK(middle_third_distance(q, j) == doctest::Approx(middle_third_distance(p, j)).epsilon(1e-12));
        }
        const double c = 0.5 + std::abs(u(rng));
        const auto s = p.transformed(0.0, {}, c);
        CHECK(s.area() == doctest::Approx(c * c * p.area()).epsilon(1e-12));
        CHECK(moment_of_inertia(s).value == doctest::Approx(std::pow(c, 4) * moment_of_inertia(p).value).epsilon(1e-12));
        CHECK(middle_third_distance(s, 0) == doctest::Approx(c * middle_third_distance(p, 0)).epsilon(1e-12));
        CHECK(polygon_side_threshold(s, 0) == doctest::Approx(polygon_side_threshold(p, 0)).epsilon(1e-12));
    }
}

TEST_CASE("middle-third distances and side thresholds") {
    const auto sq = Polygon::rectangle(1, 1);
    for (std::size_t j = 0; j < 4; ++j) CHECK(middle_third_distance(sq, j) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(polygon_side_threshold(sq, 0) == doctest::Approx(81.0 / (2.0 * pi)).epsilon(1e-14));
    CHECK(polygon_side_threshold(sq.transformed(0.3, {1, 2}, 2.0), 1) ==
          doctest::Approx(81.0 / (2.0 * pi)).epsilon(1e-12));

    const auto slab = Polygon::rectangle(10, 1);
    CHECK(middle_third_distance(slab, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(middle_third_distance(slab, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const Polygon tri({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}});
    CHECK(middle_third_distance(tri, 0) == doctest::Approx(std::sqrt(3.0) / 6.0).epsilon(1e-14));

    // A vertex 1e-13 above the middle third of side 0.
    const Polygon pinch({{0, 0}, {3, 0}, {3, 2}, {1.5, 1e-13}, {0, 2}});
    CHECK(middle_third_distance(pinch, 0) <= kDegenerateDistance);
    CHECK(std::isinf(polygon_side_threshold(pinch, 0)));
}

TEST_CASE("square counts") {
    CHECK(square_count_lower(1.0, 1800.0, true) == 10);
    CHECK(square_count_lower(9.0 * std::sqrt(2.0), 1.0, false) == 1);
    CHECK(square_count_lower(1.0, 0.0, true) == 0);
    CHECK(square_count_lower(2.0, 100.0, true) == 4);  // 20 / (3 sqrt2) = 4.71
}

TEST_CASE("smooth arc construction") {
    const auto c = SmoothArc::circle({0, 0}, 2.0, 0.0, pi, 401);
    CHECK(c.length() == doctest::Approx(2.0 * pi).epsilon(1e-15));
    CHECK(c.max_curvature() == doctest::Approx(0.5));

    // Full-ellipse perimeter against the periodic trapezoid rule on the speed.
    const double a = 2.0, b = 0.5;
    const auto e = SmoothArc::ellipse({0, 0}, a, b, 0.0, 2.0 * pi, 2001);
    double per = 0.0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * pi * i / n;
        per += std::hypot(a * std::sin(t), b * std::cos(t)) * 2.0 * pi / n;
    }
    CHECK(e.length() == doctest::Approx(per).epsilon(1e-12));
    CHECK(e.max_curvature() == doctest::Approx(a / (b * b)).epsilon(1e-6));
    CHECK(e.closed());
    for (std::size_t i = 1; i + 1 < e.samples().size(); ++i) {
        const double ds = e.samples()[i].s - e.samples()[i - 1].s;
        CHECK(ds == doctest::Approx(per / 2000.0).epsilon(1e-9));
    }

    std::vector<Vec2> pts;
    for (int i = 0; i <= 200; ++i) pts.push_back({3.0 * std::cos(i * 0.01), 3.0 * std::sin(i * 0.01)});
    const auto est = SmoothArc::from_points(pts);
    for (const auto& s : est.samples()) CHECK(s.kappa == doctest::Approx(1.0 / 3.0).epsilon(1e-6));

    CHECK_THROWS_AS(SmoothArc({{0.0, {0, 0}, 0.0}}), InputError);
    CHECK_THROWS_AS(SmoothArc({{0.0, {0, 0}, 0.0}, {0.5, {1, 0}, 0.0}}), InputError);  // chord > arc
}

TEST_CASE("arc partition") {
    const auto quarter = SmoothArc::circle({0, 0}, 1.0, 0.0, pi / 2.0, 2001);
    const std::vector<Segment> axes{{{0, 1}, {0, 0}}, {{0, 0}, {1, 0}}};
    const auto pq = arc_partition(quarter, axes);
    CHECK(pq.kase == PartitionCase::ManyParts);
    CHECK(pq.pieces() == 4);
    CHECK(pq.gaps.size() == 2);
    // Piece [pi/8, pi/4] is sin(pi/8) from the x axis; the far arc part is farther.
    CHECK(pq.d == doctest::Approx(std::sin(pi / 8.0)).epsilon(1e-6));

    const auto line = SmoothArc::segment({0, 0}, {1, 0}, 50);
    const auto pl = arc_partition(line, unit_square_rest());
    CHECK(pl.kase == PartitionCase::ThreeParts);
    CHECK(pl.pieces() == 3);
    CHECK(pl.piece_length() == doctest::Approx(1.0 / 3.0));
    CHECK(pl.d == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const auto full = SmoothArc::circle({0, 0}, 1.0, 0.0, 2.0 * pi, 4001);
    const auto pf = arc_partition(full, {});
    CHECK(pf.pieces() == 16);
    CHECK(pf.gaps.size() == 14);
    CHECK(pf.d > 0.0);

    // L = 3 pi / (8 kappa) is still the three-part case.
    const auto edge = SmoothArc::circle({0, 0}, 1.0, 0.0, 3.0 * pi / 8.0, 101);
    CHECK(8.0 * edge.length() * edge.max_curvature() == 3.0 * pi);
    CHECK(arc_partition(edge, {}).kase == PartitionCase::ThreeParts);
    CHECK(arc_partition(edge, {}).unbounded);
}

TEST_CASE("k_j thresholds") {
    const double c1 = lyb::constants::default_constants().c1;
    const double r = 1.0 / std::sqrt(pi);
    const double kappa = 1.0 / r;
    const auto t = kj_threshold(kappa, 0.5, 1.0, kappa, c1);
    CHECK(t.lambda2 == doctest::Approx(std::pow(2.0, 64) * c1).epsilon(1e-15));
    CHECK(t.lambda2 == doctest::Approx(1.513e8).epsilon(1e-3));
    const double l1 = 9.0 * 1024.0 * kappa * kappa;
    const double l3c = std::pow(2.0, 22) * std::pow(6.0, 8) * std::pow(kappa, 4) / c1;
    const double expect = std::max({l1, std::pow(2.0, 64) * c1, l3c, 9.0 / 0.25, 128.0 * kappa * kappa / (pi * pi),
                                    6.0 * kappa / 0.5}) /
                          (2.0 * pi);
    CHECK(t.k_j == doctest::Approx(expect).epsilon(1e-14));

    const auto straight = kj_threshold(0.0, 1.0 / 3.0, 1.0, 0.0, c1);
    CHECK(straight.k_j == doctest::Approx(std::pow(2.0, 64) * c1 / (2.0 * pi)).epsilon(1e-14));

    // V enters the prefactor and the two Lambda_3 terms with opposite powers.
    const auto t2 = kj_threshold(0.0, 1.0 / 3.0, 2.0, 0.0, c1);
    CHECK(t2.lambda2 == doctest::Approx(straight.lambda2 / 2.0));
    CHECK(t2.k_j == doctest::Approx(2.0 * std::max(straight.lambda2 / 2.0, 81.0) / (2.0 * pi)));

    CHECK(std::isinf(kj_threshold(1.0, 0.0, 1.0, 1.0, c1).k_j));
    const auto far = kj_threshold(1.0, std::numeric_limits<double>::infinity(), 1.0, 1.0, c1);
    CHECK(far.gap_term == 0.0);
    CHECK(std::isfinite(far.k_j));
}

TEST_CASE("chord and sagitta") {
    const auto c = SmoothArc::circle({0, 0}, 1.0, 0.0, 2.0 * pi, 8001);
    const auto r = chord_graph_check(c, 0.0, pi / 4.0);
    CHECK(r.precondition);
    CHECK(r.ok);
    CHECK(r.chord == doctest::Approx(2.0 * std::sin(pi / 8.0)).epsilon(1e-12));
    CHECK(r.max_offset == doctest::Approx(1.0 - std::cos(pi / 8.0)).epsilon(1e-6));

    const auto line = SmoothArc::segment({0, 0}, {2, 1}, 20);
    const auto rl = chord_graph_check(line, 0.3, 1.7);
    CHECK(rl.ok);
    CHECK(rl.chord == doctest::Approx(1.4).epsilon(1e-14));
    CHECK(rl.max_offset < 1e-15);

    const auto bad = chord_graph_check(c, 0.0, pi / 2.0);
    CHECK_FALSE(bad.precondition);
    CHECK_FALSE(bad.ok);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto e = SmoothArc::ellipse({1, -1}, 1.5, 0.6, 0.0, 2.0 * pi, 6001);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& arc = trial % 2 ? e : c;
        const double span = u(rng) * pi / (4.0 * arc.max_curvature());
        const double s0 = u(rng) * (arc.length() - span);
        const auto chk = chord_graph_check(arc, s0, s0 + span);
        CHECK(chk.precondition);
        CHECK(chk.ok);
    }
}

TEST_CASE("tiling a straight side of the unit square") {
    const auto line = SmoothArc::segment({0, 0}, {1, 0}, 400);
    const auto part = arc_partition(line, unit_square_rest());
    const auto t = tile_arc(line, part, 1e4, unit_square_rest());
    CHECK(t.disjoint);
    CHECK(t.squares.size() == 23);
    REQUIRE(t.coverage.size() == 1);
    CHECK(t.coverage[0].covered >= t.coverage[0].piece_length / 3.0);
    CHECK(t.coverage[0].piece_length - t.coverage[0].covered <= std::sqrt(2.0) * 1e-2 + 1e-15);
    for (const auto& a : t.arcs) CHECK(a.b2 - a.b == doctest::Approx(std::sqrt(2.0) * 1e-2));
    for (const auto& q : t.squares) {
        CHECK(q.side == doctest::Approx(0.005));
        CHECK(q.normal.y == doctest::Approx(1.0));
        // Zero curvature: the outer edge sits on the side itself.
        CHECK(q.center.y == doctest::Approx(0.0025));
        CHECK(q.center.x > 1.0 / 3.0);
        CHECK(q.center.x < 2.0 / 3.0);
    }
    CHECK(square_count_lower(1.0, 1e4, false) <= static_cast<long>(t.squares.size()));
}

TEST_CASE("tiling a quarter circle") {
    const auto quarter = SmoothArc::circle({0, 0}, 1.0, 0.0, pi / 2.0, 20001);
    const std::vector<Segment> axes{{{0, 1}, {0, 0}}, {{0, 0}, {1, 0}}};
    const auto part = arc_partition(quarter, axes);
    const auto t = tile_arc(quarter, part, 1e6, axes);
    CHECK(t.disjoint);
    CHECK(t.coverage.size() == 2);
    CHECK(static_cast<long>(t.squares.size()) >= square_count_lower(quarter.length(), 1e6, false));
    for (const auto& q : t.squares) {
        CHECK(norm(q.center) < 1.0);  // hangs inward
        CHECK(dot(q.normal, q.center) < 0.0);
    }
    CHECK_THROWS_AS(tile_arc(quarter, part, 10.0, axes), ThresholdError);
    CHECK_THROWS_AS(tile_arc(quarter, part, 1e6, {}), InputError);
}

TEST_CASE("square disjointness detects overlap") {
    std::vector<OrientedSquare> s{{{0, 0}, {1, 0}, {0, 1}, 1.0}, {{0.9, 0.2}, {1, 0}, {0, 1}, 1.0}};
    CHECK_FALSE(squares_disjoint(s));
    s[1].center = {1.01, 0.0};
    CHECK(squares_disjoint(s));
    const double h = std::sqrt(0.5);
    s[1] = {{1.1, 0.0}, {h, h}, {-h, h}, 1.0};  // rotated, corner pokes in
    CHECK_FALSE(squares_disjoint(s));
}

TEST_CASE("extended volume") {
    const auto unit = SmoothArc::circle({0, 0}, 1.0, 0.0, 1.0, 50);
    std::vector<SmoothArc> arcs{unit};
    const auto r = extended_volume_bound(arcs, 1.0, std::pow(2.0, 1.5));
    CHECK(r.bound == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_FALSE(r.doubled_ok);

    const auto big = extended_volume_bound(arcs, 1.0, 9216.0);
    CHECK(big.doubled_ok);
    CHECK(big.bound <= 2.0);

    std::vector<SmoothArc> flat{SmoothArc::segment({0, 0}, {1, 0}, 5)};
    CHECK(extended_volume_bound(flat, 3.0, 10.0).bound == 3.0);
}

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lybound/geometry/primitives.hpp"

namespace lyb::geometry {

struct ArcSample {
    double s = 0.0;      ///< arclength from the start point
    Vec2 point;
    double kappa = 0.0;  ///< signed curvature, 1/length
};

/// Arclength-sampled C^2 boundary piece. Traversal direction is free; the
/// interior side is decided against the surrounding boundary when needed.
class SmoothArc {
public:
    /// Validates: >= 2 samples, s strictly increasing from 0, chords no longer
    /// than the arclength steps (relative slack 1e-12).
    explicit SmoothArc(std::vector<ArcSample> samples);

    /// Samples without curvature; kappa estimated by three-point circumradius.
    static SmoothArc from_points(std::span<const Vec2> points);

    static SmoothArc circle(Vec2 center, double radius, double theta0, double theta1, std::size_t nsamples);
    /// Axis-aligned ellipse x = a cos t, y = b sin t, resampled uniformly in arclength.
    static SmoothArc ellipse(Vec2 center, double a, double b, double t0, double t1, std::size_t nsamples);
    static SmoothArc segment(Vec2 from, Vec2 to, std::size_t nsamples);

    std::span<const ArcSample> samples() const { return samples_; }
    double length() const { return samples_.back().s; }
    /// Largest |kappa| over the samples.
    double max_curvature() const { return max_kappa_; }
    Vec2 start() const { return samples_.front().point; }
    Vec2 end() const { return samples_.back().point; }
    bool closed() const;

    /// Linear interpolation between bracketing samples.
    Vec2 point_at(double s) const;
    /// Polyline through point_at(s0), interior samples, point_at(s1).
    std::vector<Vec2> polyline(double s0, double s1) const;
    std::vector<Segment> segments(double s0, double s1) const;
    std::vector<Segment> segments() const { return segments(0.0, length()); }

private:
    std::vector<ArcSample> samples_;
    double max_kappa_ = 0.0;
};

enum class PartitionCase { ThreeParts, ManyParts };

struct ArcPartition {
    PartitionCase kase = PartitionCase::ThreeParts;
    std::vector<double> breakpoints;  ///< a_0 = 0 < ... < a_n = L
    /// Gap distances of interior pieces i = 1..n-2 (index i-1); a single
    /// entry for the middle piece in the three-part case.
    std::vector<double> gaps;
    double d = 0.0;            ///< min of gaps, +inf when nothing to measure against
    bool unbounded = false;    ///< d is +inf (empty remainder)

    std::size_t pieces() const { return breakpoints.size() - 1; }
    double piece_length() const { return breakpoints[1] - breakpoints[0]; }
};

/// Splits an arc into equal pieces by the curvature-length rule and measures
/// the gap of every interior piece to the rest of the boundary. `rest` is the
/// boundary outside this arc; the arc's own far parts are added internally.
ArcPartition arc_partition(const SmoothArc& arc, std::span<const Segment> rest);

struct KjThreshold {
    double k_j = 0.0;
    double lambda3 = 0.0;
    double lambda1 = 0.0;   ///< 9 2^10 max kappa^2 over the domain
    double lambda2 = 0.0;   ///< 2^64 c1 / V
    double lambda3_curv = 0.0;  ///< 2^22 6^8 kappa_j^4 V / c1
    double gap_term = 0.0;      ///< 9 / d_j^2
    double curvature_term = 0.0;  ///< 128 kappa_j^2 / pi^2
    double mixed_term = 0.0;      ///< 6 kappa_j / d_j
};

/// Activation threshold k_j of a smooth piece. `global_max_kappa` is the
/// largest curvature over all pieces of the same domain.
KjThreshold kj_threshold(double kappa_j, double d_j, double area, double global_max_kappa, double c1);

struct ChordCheck {
    bool precondition = false;  ///< kappa0 |s' - s''| <= pi/4
    double chord = 0.0;          ///< u0 = |AB|
    double max_offset = 0.0;     ///< max |v(u)| over samples in the chord frame
    bool is_graph = false;       ///< u strictly increasing along the sub-arc
    bool chord_bounds = false;   ///< |s'-s''|/sqrt2 <= u0 <= |s'-s''|
    bool sagitta_bound = false;  ///< max |v| <= sqrt2 kappa0 u0^2
    bool ok = false;
    std::string diagnostic;
};

ChordCheck chord_graph_check(const SmoothArc& arc, double s1, double s2);

struct OrientedSquare {
    Vec2 center;
    Vec2 tangent;  ///< unit, along the chord
    Vec2 normal;   ///< unit, pointing into the domain
    double side = 0.0;
    std::array<Vec2, 4> corners() const;
};

struct TiledArc {
    double b = 0.0;   ///< start arclength
    double b2 = 0.0;  ///< end arclength
    std::size_t piece = 0;
};

struct PieceCoverage {
    std::size_t piece = 0;
    double piece_length = 0.0;
    double covered = 0.0;
};

struct Tiling {
    double lambda = 0.0;
    std::vector<TiledArc> arcs;
    std::vector<OrientedSquare> squares;
    std::vector<PieceCoverage> coverage;
    bool disjoint = false;
};

/// Places arcs of length sqrt(2/lambda) along every interior piece and one
/// square of side lambda^{-1/2}/2 per arc, hanging from the exterior offset
/// line into the domain. `rest` closes the boundary together with the arc.
/// Throws ThresholdError naming the first violated lambda condition.
Tiling tile_arc(const SmoothArc& arc, const ArcPartition& partition, double lambda,
                std::span<const Segment> rest);

/// True when no two closed squares share a point.
bool squares_disjoint(std::span<const OrientedSquare> squares);

struct ExtendedVolume {
    double bound = 0.0;          ///< V + 2^{3/2} / lambda * sum kappa_j L_j
    double lambda1 = 0.0;        ///< 9 2^10 max kappa_j^2
    bool doubled_ok = false;     ///< lambda >= lambda1, so V^e <= 2V is certified
    bool bound_within_double = false;  ///< the linear bound itself is <= 2V
};

ExtendedVolume extended_volume_bound(std::span<const SmoothArc> arcs, double area, double lambda);

}  // namespace lyb::geometry

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lybound/geometry/arc.hpp"
#include "lybound/geometry/polygon.hpp"
#include "lybound/minimizers.hpp"

namespace lyb::bounds {

/// 2 pi k^2 / V.
double li_yau_sum(double area, double k);
/// 2 pi k / V, a lower bound for lambda_k.
double li_yau_individual(double area, double k);

struct MelasBounds {
    double uniform = 0.0;  ///< 2 pi k^2 / V + V k / (32 I)
    double branch = 0.0;   ///< large-k or small-k right-hand side, chosen by the threshold
    minimizers::MelasBranch tag = minimizers::MelasBranch::LargeK;
    double threshold = 0.0;  ///< V^2 / (48 pi I)
    double slope = 0.0;      ///< L
    bool inertia_admissible = true;
};

/// InputError for I <= 0. An inertia below V^2 / (2 pi) is flagged, not rejected.
MelasBounds melas_bounds(double area, double inertia, double k);

/// Step with Theta(0) = 0.
inline double theta(double x) { return x > 0.0 ? 1.0 : 0.0; }

struct CorrectedBound {
    double value = 0.0;
    double li_yau = 0.0;
    double boundary = 0.0;  ///< the alpha-weighted boundary term
    double melas = 0.0;     ///< the (1 - alpha) V k / (32 I) term
    std::vector<std::size_t> active;  ///< sides or arcs whose step is on
};

/// Everything the polygon bound needs, computed once per polygon.
struct PolygonBoundData {
    double area = 0.0;
    double inertia = 0.0;
    double perimeter = 0.0;
    std::vector<double> lengths;
    std::vector<double> thresholds;  ///< 9 V / (2 pi d_j^2), +inf for degenerate sides
};

PolygonBoundData polygon_bound_data(const geometry::Polygon& p);

/// 2 pi k^2/V + 4 alpha c3 k^{3/2 - eps(k)} V^{-3/2} sum_j l_j Theta(k - k_j) + (1 - alpha) V k / (32 I).
CorrectedBound polygon_corrected_bound(const PolygonBoundData& data, double k, double alpha);
CorrectedBound polygon_corrected_bound(const geometry::Polygon& p, double k, double alpha);

struct ArcTerm {
    double length = 0.0;
    double threshold = 0.0;  ///< k_j
};

/// Length and k_j of every arc of a closed boundary made of smooth pieces;
/// each arc is partitioned against the union of the others.
std::vector<ArcTerm> arc_terms(std::span<const geometry::SmoothArc> arcs, double area);

/// 2 pi k^2/V + alpha c3 k^{3/2 - eps(k)} V^{-3/2} sum_j L_j Theta(k - k_j) + (1 - alpha) V k / (32 I).
CorrectedBound general_corrected_bound(double area, double inertia, std::span<const ArcTerm> arcs, double k,
                                       double alpha);

/// 2 pi k^2 / V + C2 |boundary| V^{-3/2} k^{3/2}.
double weyl_two_term(double area, double perimeter, double k);

/// lambda^2 V^2 / (8 pi^3 M). InputError for M <= 0.
double functional_lower_chain(double area, double cap, double lambda);

struct BoundRow {
    std::size_t k = 0;
    std::optional<double> true_sum;
    double li_yau = 0.0;
    double melas_uniform = 0.0;
    double melas_branch = 0.0;
    minimizers::MelasBranch tag = minimizers::MelasBranch::LargeK;
    double corrected = 0.0;  ///< at the requested alpha
    double corrected_alpha0 = 0.0;
    double corrected_alpha1 = 0.0;
    double weyl2 = 0.0;
    std::vector<std::size_t> active;
};

/// Rows k = 1..kmax. `partial_sums`, when given, supplies trueSum for the k it covers.
std::vector<BoundRow> bound_report(const PolygonBoundData& data, std::size_t kmax, double alpha,
                                   std::span<const double> partial_sums = {});

}  // namespace lyb::bounds

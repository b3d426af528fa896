#include "lybound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lybound/constants.hpp"
#include "lybound/errors.hpp"

namespace lyb::bounds {

namespace {

constexpr double kPi = std::numbers::pi;

void check_positive(double area, double k) {
    if (!(area > 0.0) || !std::isfinite(area)) throw InputError("area must be positive");
    if (!(k > 0.0) || !std::isfinite(k)) throw InputError("k must be positive");
}

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in [0, 1]");
}

// c3 k^{3/2 - eps(k)} V^{-3/2}
double boundary_scale(double area, double k) {
    const auto& c = constants::default_constants();
    return c.c3 * std::pow(k, 1.5 - constants::epsilon_k(k, c.c1)) * std::pow(area, -1.5);
}

}  // namespace

double li_yau_sum(double area, double k) {
    check_positive(area, k);
    return 2.0 * kPi * k * k / area;
}

double li_yau_individual(double area, double k) {
    check_positive(area, k);
    return 2.0 * kPi * k / area;
}

MelasBounds melas_bounds(double area, double inertia, double k) {
    check_positive(area, k);
    if (!(inertia > 0.0)) throw InputError("moment of inertia must be positive");
    MelasBounds b;
    b.inertia_admissible = inertia >= area * area / (2.0 * kPi) * (1.0 - 1e-12);
    b.threshold = area * area / (48.0 * kPi * inertia);
    b.slope = minimizers::melas_slope(area, inertia);
    const double ly = li_yau_sum(area, k);
    b.uniform = ly + area * k / (32.0 * inertia);
    if (k >= b.threshold) {
        b.tag = minimizers::MelasBranch::LargeK;
        b.branch = b.uniform;
    } else {
        b.tag = minimizers::MelasBranch::SmallK;
        const double coef = (1.0 - 10.0 * std::pow(2.0, -5.0 / 3.0) * std::pow(3.0, -4.0 / 3.0)) * 0.3 *
                            std::pow(2.0 / kPi, 2.0 / 3.0);
        b.branch = ly + coef * std::pow(b.slope, -2.0 / 3.0) * std::pow(k, 5.0 / 3.0);
    }
    return b;
}

PolygonBoundData polygon_bound_data(const geometry::Polygon& p) {
    const auto m = geometry::polygon_metrics(p);
    PolygonBoundData d;
    d.area = m.area;
    d.inertia = geometry::moment_of_inertia(p).value;
    d.perimeter = m.perimeter;
    d.lengths = m.sides;
    for (std::size_t j = 0; j < p.size(); ++j) d.thresholds.push_back(geometry::polygon_side_threshold(p, j));
    return d;
}

CorrectedBound polygon_corrected_bound(const PolygonBoundData& data, double k, double alpha) {
    check_positive(data.area, k);
    check_alpha(alpha);
    if (!(data.inertia > 0.0)) throw InputError("moment of inertia must be positive");
    CorrectedBound b;
    b.li_yau = li_yau_sum(data.area, k);
    double sum = 0.0;
    for (std::size_t j = 0; j < data.lengths.size(); ++j) {
        if (theta(k - data.thresholds[j]) == 0.0) continue;
        sum += data.lengths[j];
        b.active.push_back(j);
    }
    b.boundary = sum > 0.0 ? 4.0 * alpha * boundary_scale(data.area, k) * sum : 0.0;
    b.melas = (1.0 - alpha) * data.area * k / (32.0 * data.inertia);
    b.value = b.li_yau + b.boundary + b.melas;
    return b;
}

CorrectedBound polygon_corrected_bound(const geometry::Polygon& p, double k, double alpha) {
    return polygon_corrected_bound(polygon_bound_data(p), k, alpha);
}

CorrectedBound general_corrected_bound(double area, double inertia, std::span<const ArcTerm> arcs, double k,
                                       double alpha) {
    check_positive(area, k);
    check_alpha(alpha);
    if (!(inertia > 0.0)) throw InputError("moment of inertia must be positive");
    CorrectedBound b;
    b.li_yau = li_yau_sum(area, k);
    double sum = 0.0;
    for (std::size_t j = 0; j < arcs.size(); ++j) {
        if (theta(k - arcs[j].threshold) == 0.0) continue;
        sum += arcs[j].length;
        b.active.push_back(j);
    }
    b.boundary = sum > 0.0 ? alpha * boundary_scale(area, k) * sum : 0.0;
    b.melas = (1.0 - alpha) * area * k / (32.0 * inertia);
    b.value = b.li_yau + b.boundary + b.melas;
    return b;
}

std::vector<ArcTerm> arc_terms(std::span<const geometry::SmoothArc> arcs, double area) {
    double kmax = 0.0;
    for (const auto& a : arcs) kmax = std::max(kmax, a.max_curvature());
    const double c1 = constants::default_constants().c1;
    std::vector<ArcTerm> out;
    for (std::size_t j = 0; j < arcs.size(); ++j) {
        std::vector<geometry::Segment> rest;
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            if (i == j) continue;
            const auto s = arcs[i].segments();
            rest.insert(rest.end(), s.begin(), s.end());
        }
        const auto part = geometry::arc_partition(arcs[j], rest);
        const auto t = geometry::kj_threshold(arcs[j].max_curvature(), part.d, area, kmax, c1);
        out.push_back({arcs[j].length(), t.k_j});
    }
    return out;
}

double weyl_two_term(double area, double perimeter, double k) {
    check_positive(area, k);
    if (!(perimeter >= 0.0)) throw InputError("perimeter must be nonnegative");
    return li_yau_sum(area, k) + constants::default_constants().weyl2 * perimeter * std::pow(area, -1.5) * std::pow(k, 1.5);
}

double functional_lower_chain(double area, double cap, double lambda) {
    if (!(area > 0.0)) throw InputError("area must be positive");
    if (!(cap > 0.0)) throw InputError("cap value must be positive");
    if (!(lambda > 0.0)) throw InputError("lambda must be positive");
    return lambda * lambda * area * area / (8.0 * kPi * kPi * kPi * cap);
}

std::vector<BoundRow> bound_report(const PolygonBoundData& data, std::size_t kmax, double alpha,
                                   std::span<const double> partial_sums) {
    check_alpha(alpha);
    std::vector<BoundRow> rows;
    rows.reserve(kmax);
    for (std::size_t k = 1; k <= kmax; ++k) {
        const double kd = static_cast<double>(k);
        BoundRow r;
        r.k = k;
        if (k <= partial_sums.size()) r.true_sum = partial_sums[k - 1];
        r.li_yau = li_yau_sum(data.area, kd);
        const auto m = melas_bounds(data.area, data.inertia, kd);
        r.melas_uniform = m.uniform;
        r.melas_branch = m.branch;
        r.tag = m.tag;
        const auto c = polygon_corrected_bound(data, kd, alpha);
        r.corrected = c.value;
        r.active = c.active;
        r.corrected_alpha0 = polygon_corrected_bound(data, kd, 0.0).value;
        r.corrected_alpha1 = polygon_corrected_bound(data, kd, 1.0).value;
        r.weyl2 = weyl_two_term(data.area, data.perimeter, kd);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace lyb::bounds

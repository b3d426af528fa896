#include "lybound/minimizers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lybound/errors.hpp"

namespace lyb::minimizers {

namespace {

constexpr double kPi = std::numbers::pi;

// int_0^h (va + m u)(a + u) du and int_0^h (va + m u)(a + u)^3 du, expanded
// in the local coordinate u = r - a.
double piece_r1(double a, double h, double va, double m) {
    return va * (a * h + h * h / 2.0) + m * (a * h * h / 2.0 + h * h * h / 3.0);
}

double piece_r3(double a, double h, double va, double m) {
    const double a2 = a * a, a3 = a2 * a, h2 = h * h, h3 = h2 * h, h4 = h3 * h, h5 = h4 * h;
    return va * (a3 * h + 1.5 * a2 * h2 + a * h3 + h4 / 4.0) + m * (a3 * h2 / 2.0 + a2 * h3 + 0.75 * a * h4 + h5 / 5.0);
}

template <class Piece>
double integrate_exact(const RadialProfile& phi, Piece piece) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < phi.r.size(); ++i) {
        const double h = phi.r[i + 1] - phi.r[i];
        s += piece(phi.r[i], h, phi.v[i], (phi.v[i + 1] - phi.v[i]) / h);
    }
    return 2.0 * kPi * s;
}

template <class Weight>
double integrate_quadrature(const RadialProfile& phi, Weight weight) {
    using boost::math::quadrature::gauss_kronrod;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < phi.r.size(); ++i) {
        const double a = phi.r[i], b = phi.r[i + 1];
        const double va = phi.v[i], m = (phi.v[i + 1] - va) / (b - a);
        auto f = [&](double r) { return (va + m * (r - a)) * weight(r); };
        s += gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14);
    }
    return 2.0 * kPi * s;
}

}  // namespace

void RadialProfile::validate() const {
    if (r.size() < 2 || r.size() != v.size()) throw InputError("profile needs >= 2 breakpoints with heights");
    if (r.front() != 0.0) throw InputError("profile must start at r = 0");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!std::isfinite(r[i]) || !std::isfinite(v[i])) throw InputError("non-finite profile data");
        if (v[i] < 0.0 || v[i] > cap) throw InputError("profile height outside [0, cap]");
        if (i > 0 && !(r[i] > r[i - 1])) throw InputError("profile breakpoints must increase");
        if (i > 0 && v[i] > v[i - 1]) throw InputError("profile must be nonincreasing");
    }
}

double RadialProfile::operator()(double radius) const {
    if (radius < 0.0 || radius > r.back()) return 0.0;
    const auto it = std::upper_bound(r.begin(), r.end(), radius);
    if (it == r.end()) return v.back();
    const auto i = static_cast<std::size_t>(it - r.begin()) - 1;
    return v[i] + (v[i + 1] - v[i]) * (radius - r[i]) / (r[i + 1] - r[i]);
}

double profile_mass(const RadialProfile& phi) { return integrate_exact(phi, piece_r1); }

double profile_energy(const RadialProfile& phi) { return integrate_exact(phi, piece_r3); }

double profile_mass_quadrature(const RadialProfile& phi) {
    return integrate_quadrature(phi, [](double r) { return r; });
}

double profile_energy_quadrature(const RadialProfile& phi) {
    return integrate_quadrature(phi, [](double r) { return r * r * r; });
}

RadialProfile phi_li_yau(double area, double k) {
    if (!(area > 0.0) || !(k > 0.0)) throw InputError("Li-Yau profile needs V > 0, k > 0");
    const double h = area / (4.0 * kPi * kPi);
    RadialProfile p{{0.0, std::sqrt(4.0 * kPi * k / area)}, {h, h}, h};
    return p;
}

double melas_slope(double area, double inertia) {
    return 2.0 * std::sqrt(area * inertia) / (4.0 * kPi * kPi);
}

MelasProfile phi_melas(double area, double inertia, double k) {
    if (!(area > 0.0) || !(k > 0.0)) throw InputError("Melas profile needs V > 0, k > 0");
    if (!(inertia > 0.0)) throw InputError("moment of inertia must be positive");
    MelasProfile out;
    out.inertia_admissible = inertia >= area * area / (2.0 * kPi) * (1.0 - 1e-12);
    const double h = area / (4.0 * kPi * kPi);
    const double L = melas_slope(area, inertia);
    out.slope = L;
    out.threshold = area * area / (48.0 * kPi * inertia);
    if (k >= out.threshold) {
        out.branch = MelasBranch::LargeK;
        // Mass pi h (s^2 + w s + w^2/3) = k with w = t - s = h / L.
        const double w = h / L;
        const double disc = 4.0 * k / (kPi * h) - w * w / 3.0;
        if (!(disc >= 0.0)) throw DomainError("Melas plateau: no real root");
        double s = (disc - w * w) / (2.0 * (std::sqrt(disc) + w));
        if (s < 0.0) {
            if (s < -1e-12 * w) throw DomainError("Melas plateau: negative root, branch condition violated");
            s = 0.0;
        }
        // Bisection cross-check on the monotone mass condition.
        auto mass = [&](double x) { return kPi * h * (x * x + w * x + w * w / 3.0); };
        double lo = 0.0, hi = std::sqrt(k / (kPi * h)) + w;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (mass(mid) < k ? lo : hi) = mid;
        }
        if (std::abs(0.5 * (lo + hi) - s) > 1e-9 * (s + w)) throw ConvergenceError("Melas plateau: root check failed");
        out.s = s;
        out.t = s + w;
        if (s > 0.0) out.profile = {{0.0, s, s + w}, {h, h, 0.0}, h};
        else out.profile = {{0.0, w}, {h, 0.0}, h};
    } else {
        out.branch = MelasBranch::SmallK;
        const double c = std::cbrt(3.0 * k * L * L / kPi);
        out.s = 0.0;
        out.t = c / L;
        out.profile = {{0.0, c / L}, {c, 0.0}, h};
    }
    return out;
}

RadialProfile phi_corrected(double area, double eps, double delta, double k) {
    if (!(area > 0.0) || !(k > 0.0)) throw InputError("corrected profile needs V > 0, k > 0");
    const double cap = area / (4.0 * kPi * kPi);
    const double h = cap - eps * std::pow(k, -delta);
    if (!(h > 0.0)) throw InputError("corrected profile height is not positive (cap exceeded)");
    return {{0.0, std::sqrt(k / (kPi * h))}, {h, h}, cap};
}

CorrectionFit correction_coefficient(double area, double eps, double delta, std::span<const double> ks) {
    CorrectionFit fit;
    fit.exponent_target = 2.0 - delta;
    fit.a_analytic = 8.0 * kPi * kPi * kPi * eps / (area * area);
    if (ks.size() < 2) {
        fit.ill_conditioned = true;
        fit.diagnostic = "need at least two k values";
        return fit;
    }
    const auto [kmin, kmax] = std::minmax_element(ks.begin(), ks.end());
    if (*kmax / *kmin < 10.0) {
        fit.ill_conditioned = true;
        fit.diagnostic = "k range spans less than a decade";
    }
    std::vector<double> excess;
    excess.reserve(ks.size());
    for (double k : ks) {
        const double e = profile_energy(phi_corrected(area, eps, delta, k));
        excess.push_back(e - 2.0 * kPi * k * k / area);
    }
    if (eps == 0.0) {
        fit.a_fit = 0.0;
        fit.exponent = std::nan("");
        fit.max_residual = 0.0;
        // Relative to the Li-Yau energy, since only rounding remains.
        for (std::size_t i = 0; i < ks.size(); ++i)
            fit.max_residual = std::max(fit.max_residual, std::abs(excess[i]) * area / (2.0 * kPi * ks[i] * ks[i]));
        fit.diagnostic = "zero correction";
        return fit;
    }
    // Scalar least squares for A, log-log regression for the exponent.
    double num = 0.0, den = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double basis = std::pow(ks[i], fit.exponent_target);
        num += excess[i] * basis;
        den += basis * basis;
        if (!(excess[i] > 0.0)) {
            fit.ill_conditioned = true;
            fit.diagnostic = "nonpositive excess energy at k = " + std::to_string(ks[i]);
            continue;
        }
        const double x = std::log(ks[i]), y = std::log(excess[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.a_fit = num / den;
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double model = fit.a_fit * std::pow(ks[i], fit.exponent_target);
        fit.max_residual = std::max(fit.max_residual, std::abs(excess[i] - model) / std::abs(model));
    }
    return fit;
}

namespace {

// Linear programme with two rows: min c.x subject to A x = b, 0 <= x <= ub,
// solved by the bounded-variable primal simplex method (two phases).
class TwoRowSimplex {
public:
    struct Column {
        double a0, a1, cost, upper;
    };

    TwoRowSimplex(std::vector<Column> cols, double b0, double b1) : cols_(std::move(cols)), b_{b0, b1} {}

    // Returns x, or throws ConvergenceError when the rows cannot be met.
    std::vector<double> solve(std::size_t& iterations) {
        const std::size_t n = cols_.size();
        // Artificial columns for both rows start in the basis.
        cols_.push_back({1.0, 0.0, 0.0, kInf});
        cols_.push_back({0.0, 1.0, 0.0, kInf});
        x_.assign(n + 2, 0.0);
        state_.assign(n + 2, State::Lower);
        basis_ = {n, n + 1};
        state_[n] = state_[n + 1] = State::Basic;

        std::vector<double> phase1(n + 2, 0.0), phase2(n + 2, 0.0);
        phase1[n] = phase1[n + 1] = 1.0;
        for (std::size_t j = 0; j < n; ++j) phase2[j] = cols_[j].cost;
        iterations = run(phase1);
        if (x_[n] + x_[n + 1] > 1e-10) throw ConvergenceError("discrete problem is infeasible on this grid");
        cols_[n].upper = cols_[n + 1].upper = 0.0;
        iterations += run(phase2);
        x_.resize(n);
        return x_;
    }

private:
    enum class State { Lower, Upper, Basic };
    static constexpr double kInf = std::numeric_limits<double>::infinity();
    static constexpr double kTol = 1e-12;

    void basic_solution(double inv[2][2]) {
        const Column& p = cols_[basis_[0]];
        const Column& q = cols_[basis_[1]];
        const double det = p.a0 * q.a1 - q.a0 * p.a1;
        if (std::abs(det) < 1e-300) throw ConvergenceError("simplex basis became singular");
        inv[0][0] = q.a1 / det;
        inv[0][1] = -q.a0 / det;
        inv[1][0] = -p.a1 / det;
        inv[1][1] = p.a0 / det;
        double r0 = b_[0], r1 = b_[1];
        for (std::size_t j = 0; j < cols_.size(); ++j)
            if (state_[j] == State::Upper) r0 -= cols_[j].a0 * x_[j], r1 -= cols_[j].a1 * x_[j];
        x_[basis_[0]] = inv[0][0] * r0 + inv[0][1] * r1;
        x_[basis_[1]] = inv[1][0] * r0 + inv[1][1] * r1;
    }

    std::size_t run(const std::vector<double>& c) {
        std::size_t it = 0, degenerate = 0;
        const std::size_t limit = 50 * cols_.size() + 1000;
        for (; it < limit; ++it) {
            double inv[2][2];
            basic_solution(inv);
            const double y0 = c[basis_[0]] * inv[0][0] + c[basis_[1]] * inv[1][0];
            const double y1 = c[basis_[0]] * inv[0][1] + c[basis_[1]] * inv[1][1];
            // Dantzig pricing, Bland's rule after a run of degenerate steps.
            const bool bland = degenerate > 50;
            std::size_t enter = cols_.size();
            double best = 0.0;
            for (std::size_t j = 0; j < cols_.size(); ++j) {
                if (state_[j] == State::Basic) continue;
                const double d = c[j] - y0 * cols_[j].a0 - y1 * cols_[j].a1;
                const double gain = state_[j] == State::Lower ? -d : (cols_[j].upper > 0.0 ? d : 0.0);
                if (gain > kTol * (1.0 + std::abs(c[j])) && gain > best) {
                    enter = j;
                    best = gain;
                    if (bland) break;
                }
            }
            if (enter == cols_.size()) return it;

            const double dir = state_[enter] == State::Lower ? 1.0 : -1.0;
            const double al[2] = {inv[0][0] * cols_[enter].a0 + inv[0][1] * cols_[enter].a1,
                                  inv[1][0] * cols_[enter].a0 + inv[1][1] * cols_[enter].a1};
            double t = cols_[enter].upper;
            int leave = -1;
            bool to_upper = false;
            for (int i = 0; i < 2; ++i) {
                const double rate = dir * al[i];
                const std::size_t bi = basis_[i];
                if (rate > kTol) {
                    const double lim = std::max(x_[bi], 0.0) / rate;
                    if (lim < t) t = lim, leave = i, to_upper = false;
                } else if (rate < -kTol && std::isfinite(cols_[bi].upper)) {
                    const double lim = std::max(cols_[bi].upper - x_[bi], 0.0) / -rate;
                    if (lim < t) t = lim, leave = i, to_upper = true;
                }
            }
            if (!std::isfinite(t)) throw ConvergenceError("discrete problem is unbounded");
            degenerate = t == 0.0 ? degenerate + 1 : 0;
            x_[enter] += dir * t;
            if (leave < 0) {
                state_[enter] = state_[enter] == State::Lower ? State::Upper : State::Lower;
                x_[enter] = state_[enter] == State::Lower ? 0.0 : cols_[enter].upper;
                continue;
            }
            const std::size_t out = basis_[static_cast<std::size_t>(leave)];
            state_[out] = to_upper ? State::Upper : State::Lower;
            x_[out] = to_upper ? cols_[out].upper : 0.0;
            state_[enter] = State::Basic;
            basis_[static_cast<std::size_t>(leave)] = enter;
        }
        throw ConvergenceError("simplex iteration limit reached");
    }

    std::vector<Column> cols_;
    double b_[2];
    std::vector<double> x_;
    std::vector<State> state_;
    std::array<std::size_t, 2> basis_{};
};

MinimalityRun discrete_minimum(double radius, std::size_t n, double mass, double cap, double slope_limit) {
    const double dr = radius / static_cast<double>(n);
    // Hat-function weights for nodes 0..n-1 (node n is pinned to zero).
    std::vector<double> w(n, 0.0), e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = dr * static_cast<double>(i);
        // Falling half of hat i on [a, a + dr], rising half of hat i+1.
        w[i] += 2.0 * kPi * piece_r1(a, dr, 1.0, -1.0 / dr);
        e[i] += 2.0 * kPi * piece_r3(a, dr, 1.0, -1.0 / dr);
        if (i + 1 < n) {
            w[i + 1] += 2.0 * kPi * piece_r1(a, dr, 0.0, 1.0 / dr);
            e[i + 1] += 2.0 * kPi * piece_r3(a, dr, 0.0, 1.0 / dr);
        }
    }
    // Increments g_j = y_j - y_{j+1}; y_i = sum_{j >= i} g_j.
    std::vector<double> W(n), E(n);
    std::partial_sum(w.begin(), w.end(), W.begin());
    std::partial_sum(e.begin(), e.end(), E.begin());
    const double upper = std::isfinite(slope_limit) ? slope_limit * dr : std::numeric_limits<double>::infinity();
    // Rows scaled to order one: W . g = mass and sum g + slack = cap.
    const double wmax = W.back(), emax = E.back();
    std::vector<TwoRowSimplex::Column> cols;
    cols.reserve(n + 1);
    for (std::size_t j = 0; j < n; ++j) cols.push_back({W[j] / wmax, 1.0 / cap, E[j] / emax, upper});
    cols.push_back({0.0, 1.0, 0.0, std::numeric_limits<double>::infinity()});
    TwoRowSimplex lp(std::move(cols), mass / wmax, 1.0);
    std::size_t it = 0;
    auto x = lp.solve(it);
    const std::vector<double> g(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    const double en = std::inner_product(g.begin(), g.end(), E.begin(), 0.0);
    MinimalityRun run;
    run.nodes = n;
    run.energy = en;
    run.mass = std::inner_product(g.begin(), g.end(), W.begin(), 0.0);
    run.iterations = it;
    return run;
}

}  // namespace

MinimalityReport minimality_check(const RadialProfile& analytic, double mass, double cap, double slope_limit,
                                  std::span<const std::size_t> grids) {
    analytic.validate();
    const double target = profile_energy(analytic);
    MinimalityReport rep;
    rep.lower_ok = true;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t n : grids) {
        auto run = discrete_minimum(1.25 * analytic.support(), n, mass, cap, slope_limit);
        run.analytic = target;
        run.rel_gap = (run.energy - target) / target;
        if (run.rel_gap < -1e-6) rep.lower_ok = false;
        const double x = std::log2(static_cast<double>(n));
        const double y = -std::log2(std::max(std::abs(run.rel_gap), 1e-16));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        rep.runs.push_back(run);
    }
    const double m = static_cast<double>(grids.size());
    rep.observed_order = grids.size() > 1 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
    return rep;
}

}  // namespace lyb::minimizers

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace lyb::minimizers {

/// Piecewise-linear nonincreasing radial function: linear between
/// consecutive breakpoints, zero beyond the last one (a drop to zero at the
/// last breakpoint is allowed).
struct RadialProfile {
    std::vector<double> r;  ///< strictly increasing, r[0] = 0
    std::vector<double> v;  ///< heights at the breakpoints
    double cap = std::numeric_limits<double>::infinity();

    /// Throws InputError unless the shape invariants hold.
    void validate() const;
    double operator()(double radius) const;
    double support() const { return r.back(); }
};

/// 2 pi int Phi(r) r dr, exactly per linear piece.
double profile_mass(const RadialProfile& phi);
/// 2 pi int Phi(r) r^3 dr, exactly per linear piece.
double profile_energy(const RadialProfile& phi);
/// Same integrals by adaptive Gauss-Kronrod quadrature on each piece.
double profile_mass_quadrature(const RadialProfile& phi);
double profile_energy_quadrature(const RadialProfile& phi);

/// Height V / 4 pi^2 on [0, sqrt(4 pi k / V)].
RadialProfile phi_li_yau(double area, double k);

enum class MelasBranch { LargeK, SmallK };

struct MelasProfile {
    RadialProfile profile;
    MelasBranch branch = MelasBranch::LargeK;
    double slope = 0.0;      ///< L = 2 (2 pi)^{-2} sqrt(V I)
    double threshold = 0.0;  ///< V^2 / (48 pi I)
    double s = 0.0;          ///< end of the plateau (large k)
    double t = 0.0;          ///< end of the support
    bool inertia_admissible = true;  ///< I >= V^2 / (2 pi)
};

/// L = 2 (2 pi)^{-2} sqrt(V I).
double melas_slope(double area, double inertia);

/// Trapezoid for k >= V^2 / (48 pi I), cone (c - L r)_+ otherwise. k may be
/// fractional so the cone branch can be exercised. Throws InputError for
/// I <= 0 and DomainError when the plateau length has no admissible root.
MelasProfile phi_melas(double area, double inertia, double k);

/// Height V / 4 pi^2 - eps k^{-delta} on [0, sqrt(k / (pi h))]. InputError if the height is <= 0.
RadialProfile phi_corrected(double area, double eps, double delta, double k);

struct CorrectionFit {
    double a_fit = 0.0;       ///< least-squares A in E - 2 pi k^2 / V ~ A k^{2 - delta}
    double a_analytic = 0.0;  ///< 8 pi^3 eps / V^2
    double exponent = 0.0;    ///< slope of log(E - 2 pi k^2 / V) against log k
    double exponent_target = 0.0;
    double max_residual = 0.0;  ///< max relative deviation of the data from a_fit k^{2 - delta}
    bool ill_conditioned = false;
    std::string diagnostic;
};

/// Fits the excess energy of phi_corrected over the Li-Yau value for the
/// given k. The exact excess is (2 pi / V) k^2 x / (1 - x) with
/// x = 4 pi^2 eps k^{-delta} / V, whose leading term gives a_analytic.
CorrectionFit correction_coefficient(double area, double eps, double delta, std::span<const double> ks);

struct MinimalityRun {
    std::size_t nodes = 0;
    double energy = 0.0;    ///< discrete minimum found
    double analytic = 0.0;  ///< energy of the analytic profile
    double rel_gap = 0.0;   ///< (energy - analytic) / analytic
    double mass = 0.0;      ///< mass of the discrete minimiser
    std::size_t iterations = 0;
};

struct MinimalityReport {
    std::vector<MinimalityRun> runs;
    double observed_order = 0.0;  ///< least-squares slope of -log2(rel_gap) per grid doubling
    bool lower_ok = false;        ///< every run has rel_gap >= -1e-6
};

/// Minimises the energy over piecewise-linear profiles on a uniform radial
/// grid (heights in [0, cap], nonincreasing, slope >= -slope_limit, fixed
/// mass, zero at the outer radius 1.25 * analytic support) as a linear
/// programme in the increments y_j - y_{j+1}, and compares with the analytic profile for every grid size.
MinimalityReport minimality_check(const RadialProfile& analytic, double mass, double cap, double slope_limit,
                                  std::span<const std::size_t> grids);

}  // namespace lyb::minimizers

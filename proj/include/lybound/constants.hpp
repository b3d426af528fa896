#pragma once

#include <cmath>
#include <numbers>
#include <type_traits>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace lyb::constants {

using BigInt = boost::multiprecision::cpp_int;

/// The explicit constants of the bounds, evaluated from their defining
/// expressions in the arithmetic of `Real` (double, long double or a Boost
/// multiprecision float).
template <class Real>
struct ConstantsTable {
    Real c0;        ///< 7 10^22, growth constant of A_p(p)
    Real c1;        ///< sqrt(3 pi / 14) 10^-11
    Real c1_proof;  ///< sqrt(3 pi / 2) c0^{-1/2}, the form used inside the square estimate
    Real c2;        ///< 2^-3 / (9 sqrt2 36) c1^{-1/2}
    Real c3;        ///< 2^-3 / (9 sqrt2 36) (2 pi)^{5/4} c1^{1/4}
    Real weyl2;     ///< second Weyl coefficient for d = 2 from the Gamma-function display

    static ConstantsTable make() {
        using std::pow;
        using std::sqrt;
        const Real pi = pi_value();
        const Real ten = 10;
        ConstantsTable t;
        t.c0 = Real(7) * pow(ten, 22);
        t.c1 = sqrt(Real(3) * pi / Real(14)) * pow(ten, -11);
        t.c1_proof = sqrt(Real(3) * pi / Real(2)) / sqrt(t.c0);
        const Real k = Real(1) / (Real(8) * Real(9) * sqrt(Real(2)) * Real(36));
        t.c2 = k / sqrt(t.c1);
        t.c3 = k * pow(Real(2) * pi, Real(5) / Real(4)) * pow(t.c1, Real(1) / Real(4));
        // sqrt(pi) Gamma(3)^{3/2} / (3 Gamma(5/2) Gamma(2)^{1/2}); Gamma(3) = 2, Gamma(2) = 1,
        // Gamma(5/2) = 3 sqrt(pi) / 4.
        const Real gamma52 = Real(3) * sqrt(pi) / Real(4);
        t.weyl2 = sqrt(pi) * pow(Real(2), Real(3) / Real(2)) / (Real(3) * gamma52);
        return t;
    }

private:
    static Real pi_value() {
        if constexpr (std::is_floating_point_v<Real>) return std::numbers::pi_v<Real>;
        else return boost::math::constants::pi<Real>();
    }
};

/// Double-precision table, built once.
const ConstantsTable<double>& default_constants();

/// 2 / sqrt(log2(2 pi k / c1)). Throws DomainError when 2 pi k / c1 <= 1.
double epsilon_k(double k, double c1);

/// A_n(p) from the two-term recurrence with A_0 = A_1 = 1, exactly.
BigInt a_seq_exact(int p, int n);
/// The same value computed independently in the log2 domain.
double a_seq_log2(int p, int n);
/// log2 of a positive big integer, accurate to double rounding.
double log2_big(const BigInt& x);

struct GrowthRow {
    int p = 0;
    double log2_a = 0.0;      ///< log2 A_p(p), from the exact integer
    double log2_bound = 0.0;  ///< log2(c0 2^{(p+1)^2})
    bool ok = false;          ///< exact integer comparison A_p(p) <= c0 2^{(p+1)^2}
};

/// Growth bound A_p(p) <= c0 2^{(p+1)^2} for p = 1..p_max (p_max <= 64).
std::vector<GrowthRow> a_growth_check(int p_max);

/// floor(sqrt(2 log2(V lambda / c1))) - 1, at least 1. DomainError if V lambda <= c1.
int optimal_p(double area, double lambda, double c1);

struct BetaSq {
    double log2 = 0.0;
    double value = 0.0;  ///< +inf when it does not fit in a double
};

/// A_p(p) V^2 / (4 pi), or A_p(p) V^2 / pi for general domains.
BetaSq beta_sq(int p, double area, bool general_domain = false);

/// Upper bound V lambda / (4 pi) on the number of eigenvalues below lambda.
double counting_bound(double area, double lambda);

}  // namespace lyb::constants

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace lyb::constants {

/// Real trigonometric polynomial sum_n a_n cos(n w t) + b_n sin(n w t) with
/// derivatives of any order in closed form.
struct TrigPoly {
    double omega = 1.0;
    std::vector<double> a;
    std::vector<double> b;  ///< same length as a; b[0] is ignored

    std::size_t degree() const { return a.empty() ? 0 : a.size() - 1; }
    double derivative(int q, double t) const;
    double operator()(double t) const { return derivative(0, t); }
    bool is_zero() const;
};

/// f = re + i im on [0, l].
struct ComplexTrigPoly {
    TrigPoly re;
    TrigPoly im;

    std::complex<double> operator()(double t) const { return {re(t), im(t)}; }
    /// Integral over [0, l] of f(t) exp(-i phi t), in closed form.
    std::complex<double> fourier(double phi, double l) const;
};

/// max over [0, l] of |g^{(q)}|: dense grid followed by golden-section
/// refinement around every grid-local maximum.
double max_abs_derivative(const TrigPoly& g, int q, double l, std::size_t samples);

/// Squared L2 norm over [0, l] of g^{(q)} by composite Gauss-Legendre.
double l2_sq_derivative(const TrigPoly& g, int q, double l);

struct LemmaCheck {
    std::string name;  ///< "sup[re]", "first_derivative[im]", "interpolation[re]", "exp_distance"
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct LemmaReport {
    double lambda = 0.0;
    int p = 0;
    double interval = 0.0;  ///< l = lambda^{-1/2} / 2
    std::vector<LemmaCheck> checks;

    std::size_t violations() const;
};

/// Checks, on f restricted to [0, lambda^{-1/2}/2]:
///  - max|g^(p)|^2 <= 3/2 (|g^(p)|^2 / l + l |g^(p+1)|^2) for g = Re f, Im f;
///  - max|g| max|g''| >= max|g'|^2 / 4  or  max|g'| <= 32 sqrt(lambda) max|g|;
///  - the two-way bound on max|g'| in terms of max|g| and max|g^(p)|;
///  - for f - f(0), the lower bound on the distance to every unimodular
///    exponential, with C(p) = max|f^(p)| / lambda^{p/2+1}.
/// The two dichotomies use relative slack 1e-9. The phase phi0 is optimised
/// in closed form; phi1 by a grid plus refinement over a range beyond which
/// integration by parts certifies nothing better exists.
/// Throws ResolutionError when `samples` gives fewer than 32 points per
/// period of the highest harmonic.
LemmaReport one_d_lemma_suite(const ComplexTrigPoly& f, double lambda, int p, std::size_t samples = 4096);

}  // namespace lyb::constants

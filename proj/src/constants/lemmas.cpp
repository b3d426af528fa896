#include "lybound/lemmas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "lybound/errors.hpp"

namespace lyb::constants {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSlack = 1e-9;

constexpr std::array<double, 8> kGaussX = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                           -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                           0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussW = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                           0.3626837833783620, 0.3626837833783620, 0.2223810344533745,
                                           0.3137066458778873, 0.1012285362903763};

// Integral over [0, l] of exp(i s t).
std::complex<double> exp_integral(double s, double l) {
    const double x = s * l;
    if (std::abs(x) < 1e-6) {
        const std::complex<double> ix(0.0, x);
        return l * (1.0 + ix / 2.0 + ix * ix / 6.0 + ix * ix * ix / 24.0);
    }
    return (std::exp(std::complex<double>(0.0, x)) - 1.0) / std::complex<double>(0.0, s);
}

std::size_t harmonics(const TrigPoly& g) { return g.degree(); }

template <class F>
double golden_max(F f, double lo, double hi) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

// Grid maximum of a nonnegative function on [0, l], refined at local maxima.
template <class F>
double refined_max(F f, double l, std::size_t samples) {
    const std::size_t n = std::max<std::size_t>(samples, 8);
    const double h = l / static_cast<double>(n);
    std::vector<double> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = f(h * static_cast<double>(i));
    double best = std::max(v.front(), v.back());
    for (std::size_t i = 1; i < n; ++i) {
        best = std::max(best, v[i]);
        if (v[i] >= v[i - 1] && v[i] >= v[i + 1])
            best = std::max(best, golden_max(f, h * static_cast<double>(i - 1), h * static_cast<double>(i + 1)));
    }
    return best;
}

}  // namespace

double TrigPoly::derivative(int q, double t) const {
    // d^q/dt^q of cos(x) is cos(x + q pi/2), likewise for sin.
    const double shift = 0.5 * kPi * static_cast<double>(q % 4);
    double s = q == 0 && !a.empty() ? a[0] : 0.0;
    for (std::size_t n = 1; n < a.size(); ++n) {
        const double w = static_cast<double>(n) * omega;
        const double x = w * t + shift;
        s += std::pow(w, q) * (a[n] * std::cos(x) + b[n] * std::sin(x));
    }
    return s;
}

bool TrigPoly::is_zero() const {
    for (std::size_t n = 0; n < a.size(); ++n)
        if (a[n] != 0.0 || (n > 0 && b[n] != 0.0)) return false;
    return true;
}

std::complex<double> ComplexTrigPoly::fourier(double phi, double l) const {
    // cos(x) = (e^{ix} + e^{-ix})/2, sin(x) = (e^{ix} - e^{-ix})/(2i).
    const std::complex<double> I(0.0, 1.0);
    std::complex<double> sum = 0.0;
    auto add = [&](const TrigPoly& g, std::complex<double> unit) {
        for (std::size_t n = 0; n < g.a.size(); ++n) {
            const double w = static_cast<double>(n) * g.omega;
            const auto ep = exp_integral(w - phi, l);
            const auto em = exp_integral(-w - phi, l);
            if (n == 0) {
                sum += unit * g.a[0] * ep;
                continue;
            }
            sum += unit * (g.a[n] * 0.5 * (ep + em) + g.b[n] * (ep - em) / (2.0 * I));
        }
    };
    add(re, 1.0);
    add(im, I);
    return sum;
}

double max_abs_derivative(const TrigPoly& g, int q, double l, std::size_t samples) {
    return refined_max([&](double t) { return std::abs(g.derivative(q, t)); }, l, samples);
}

double l2_sq_derivative(const TrigPoly& g, int q, double l) {
    const std::size_t panels = 16 * (harmonics(g) + 1);
    const double h = l / static_cast<double>(panels);
    double s = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
        const double mid = (static_cast<double>(k) + 0.5) * h;
        for (std::size_t j = 0; j < kGaussX.size(); ++j) {
            const double v = g.derivative(q, mid + 0.5 * h * kGaussX[j]);
            s += kGaussW[j] * v * v;
        }
    }
    return 0.5 * h * s;
}

std::size_t LemmaReport::violations() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const LemmaCheck& c) { return !c.holds; }));
}

namespace {

void real_part_checks(const TrigPoly& g, const char* tag, double lambda, int p, double l, std::size_t samples,
                      std::vector<LemmaCheck>& out) {
    const std::string suffix = std::string("[") + tag + "]";
    const double sq = std::sqrt(lambda);

    const double mp = max_abs_derivative(g, p, l, samples);
    const double rhs_max = 1.5 * (l2_sq_derivative(g, p, l) / l + l * l2_sq_derivative(g, p + 1, l));
    out.push_back({"sup" + suffix, mp * mp <= rhs_max * (1.0 + kSlack), mp * mp, rhs_max});

    const double m0 = max_abs_derivative(g, 0, l, samples);
    const double m1 = max_abs_derivative(g, 1, l, samples);
    const double m2 = max_abs_derivative(g, 2, l, samples);
    const bool first = m0 * m2 >= 0.25 * m1 * m1 * (1.0 - kSlack);
    const bool second = m1 <= 32.0 * sq * m0 * (1.0 + kSlack);
    // Reported pair is the second alternative.
    out.push_back({"first_derivative" + suffix, first || second, m1, 32.0 * sq * m0});

    const double pd = p;
    const bool alt3 = m1 <= std::pow(4.0, pd + 0.5) * sq * m0 * (1.0 + kSlack);
    const bool alt4 =
        m0 > 0.0 && m1 <= std::pow(mp / m0, 1.0 / pd) * std::pow(4.0, pd - 0.5) * m0 * (1.0 + kSlack);
    out.push_back({"interpolation" + suffix, alt3 || alt4 || m1 == 0.0, m1, std::pow(4.0, pd + 0.5) * sq * m0});
}

}  // namespace

LemmaReport one_d_lemma_suite(const ComplexTrigPoly& f, double lambda, int p, std::size_t samples) {
    if (!(lambda > 0.0)) throw InputError("lemma suite needs lambda > 0");
    if (p < 1) throw InputError("lemma suite needs p >= 1");
    const double l = 0.5 / std::sqrt(lambda);
    const double top = std::max(static_cast<double>(harmonics(f.re)) * f.re.omega,
                                static_cast<double>(harmonics(f.im)) * f.im.omega);
    // Points per period of the fastest harmonic.
    if (top > 0.0 && static_cast<double>(samples) / (top * l / (2.0 * kPi)) < 32.0)
        throw ResolutionError("sampling too coarse for the highest harmonic");

    LemmaReport rep;
    rep.lambda = lambda;
    rep.p = p;
    rep.interval = l;
    real_part_checks(f.re, "re", lambda, p, l, samples, rep.checks);
    if (!f.im.is_zero()) real_part_checks(f.im, "im", lambda, p, l, samples, rep.checks);

    // Distance to unimodular exponentials, after shifting to f(0) = 0.
    ComplexTrigPoly g = f;
    if (g.re.a.empty()) g.re.a = {0.0}, g.re.b = {0.0};
    if (g.im.a.empty()) g.im.a = {0.0}, g.im.b = {0.0};
    const std::complex<double> f0 = f(0.0);
    g.re.a[0] -= f0.real();
    g.im.a[0] -= f0.imag();

    const double norm_sq = l2_sq_derivative(g.re, 0, l) + l2_sq_derivative(g.im, 0, l);
    const double max_fp = refined_max(
        [&](double t) { return std::hypot(g.re.derivative(p, t), g.im.derivative(p, t)); }, l, samples);
    const double pd = p;
    const double C = max_fp / std::pow(lambda, 0.5 * pd + 1.0);
    const double first = std::pow(4.0, -pd - 2.5);
    const double second = C > 0.0 ? std::pow(4.0, -0.5 * (pd + 3.0)) * std::pow(6.0, 1.0 / pd) *
                                         std::pow(C, -1.0 / pd) * std::pow(lambda, -1.0 / pd)
                                   : first;
    const double rhs = std::sqrt(1.0 / lambda) / 9.0 * std::min(first, second);

    // Maximise |F(phi)|; |F(phi)| <= (|f(l)| + int |f'|) / |phi| past the scan range.
    double var = std::abs(g(l));
    {
        const std::size_t panels = 16 * (std::max(harmonics(g.re), harmonics(g.im)) + 1);
        const double h = l / static_cast<double>(panels);
        for (std::size_t k = 0; k < panels; ++k)
            for (std::size_t j = 0; j < kGaussX.size(); ++j) {
                const double t = (static_cast<double>(k) + 0.5 + 0.5 * kGaussX[j]) * h;
                var += 0.5 * h * kGaussW[j] * std::hypot(g.re.derivative(1, t), g.im.derivative(1, t));
            }
    }
    auto mag = [&](double phi) { return std::abs(g.fourier(phi, l)); };
    const double step = 0.05 / l;
    double best = mag(0.0), arg = 0.0;
    auto scan = [&](double from, double to) {
        for (double phi = from; phi <= to; phi += step) {
            for (const double x : {phi, -phi}) {
                const double m = mag(x);
                if (m > best) best = m, arg = x;
            }
        }
    };
    double range = 64.0 / l;
    scan(step, range);
    // Past `range`, |F| cannot exceed var / range; extend until that is below the best found.
    while (best > 0.0 && var / best > range) {
        const double next = std::min(var / best, 4.0 * range);
        scan(range, next);
        range = next;
    }
    best = std::max(best, golden_max(mag, arg - step, arg + step));
    const double lhs = norm_sq + l - 2.0 * best;
    rep.checks.push_back({"exp_distance", lhs >= rhs, lhs, rhs});
    return rep;
}

}  // namespace lyb::constants

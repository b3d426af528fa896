#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "lybound/constants.hpp"
#include "lybound/errors.hpp"
#include "lybound/spectra.hpp"

using namespace lyb::spectra;
using lyb::geometry::Polygon;
using std::numbers::pi;

namespace {

// Power series of J_m; cancellation costs about x / 2.3 digits.
double bessel_series(int m, double x) {
    double term = std::pow(0.5 * x, m) / std::tgamma(m + 1.0), sum = term;
    for (int j = 1; j < 200; ++j) {
        term *= -0.25 * x * x / (j * (j + m));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double series_zero(int m, double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        ((bessel_series(m, mid) > 0.0) == (bessel_series(m, lo) > 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("rectangle spectrum") {
    const auto s = rectangle_spectrum(1.0, 1.0, 4);
    REQUIRE(s.count() == 4);
    CHECK(s.eigenvalues[0] == doctest::Approx(2.0 * pi * pi).epsilon(1e-15));
    CHECK(s.eigenvalues[1] == doctest::Approx(5.0 * pi * pi).epsilon(1e-15));
    CHECK(s.eigenvalues[2] == doctest::Approx(5.0 * pi * pi).epsilon(1e-15));
    CHECK(s.eigenvalues[3] == doctest::Approx(8.0 * pi * pi).epsilon(1e-15));
    CHECK(partial_sums(s, 4) == doctest::Approx(20.0 * pi * pi).epsilon(1e-15));
    CHECK(partial_sums(s, 0) == 0.0);
    CHECK_THROWS_AS(partial_sums(s, 5), lyb::InputError);
    CHECK(rectangle_spectrum(1.0, 1.0, 0).count() == 0);

    std::vector<double> brute;
    for (int m = 1; m <= 50; ++m)
        for (int n = 1; n <= 50; ++n) brute.push_back(pi * pi * (m * m + n * n));
    std::sort(brute.begin(), brute.end());
    const auto big = rectangle_spectrum(1.0, 1.0, 100);
    double sum = 0.0;
    for (int i = 0; i < 100; ++i) sum += brute[i];
    CHECK(partial_sums(big, 100) == doctest::Approx(sum).epsilon(1e-14));

    const auto scaled = rectangle_spectrum(3.0, 3.0, 100);
    for (std::size_t i = 0; i < 100; ++i) CHECK(scaled.eigenvalues[i] == doctest::Approx(big.eigenvalues[i] / 9.0).epsilon(1e-14));

    // Every value is pi^2 (m^2/a^2 + n^2/b^2) and the prefix identity holds.
    const auto r = rectangle_spectrum(2.0, 0.5, 500);
    const auto ps = prefix_sums(r);
    for (std::size_t i = 0; i < r.count(); ++i) {
        const double q = r.eigenvalues[i] / (pi * pi);
        bool found = false;
        for (int m = 1; m < 100 && !found; ++m) {
            const double rest = (q - m * m / 4.0) * 0.25;
            const double n = std::round(std::sqrt(std::max(rest, 0.0)));
            found = n >= 1 && std::abs(m * m / 4.0 + 4.0 * n * n - q) < 1e-9 * q;
        }
        CHECK(found);
        if (i > 0) {
            CHECK(r.eigenvalues[i] >= r.eigenvalues[i - 1]);
            CHECK(ps[i] == doctest::Approx(ps[i - 1] + r.eigenvalues[i]).epsilon(1e-15));
        }
    }
}

TEST_CASE("Weyl consistency of exact spectra") {
    const auto s = rectangle_spectrum(1.0, 1.0, 10000);
    const double t = s.eigenvalues.back();
    CHECK(std::abs(static_cast<double>(counting_function(s, t)) / (t / (4.0 * pi)) - 1.0) < 0.05);
    const auto d = disk_spectrum(1.0, 10000);
    const double td = d.eigenvalues.back();
    CHECK(std::abs(static_cast<double>(counting_function(d, td)) / (pi * td / (4.0 * pi)) - 1.0) < 0.05);
}

TEST_CASE("Bessel zeros and disk spectrum") {
    CHECK(bessel_zero(0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-14));
    CHECK(bessel_zero(1, 1) == doctest::Approx(3.831705970207512).epsilon(1e-14));
    CHECK(bessel_zero(0, 2) == doctest::Approx(5.520078110286311).epsilon(1e-14));
    for (int m = 0; m < 6; ++m)
        for (int i = 1; i < 4; ++i) {
            const double z = bessel_zero(m, i);
            // The alternating series loses digits to cancellation as x grows.
            CHECK(series_zero(m, z - 0.1, z + 0.1) == doctest::Approx(z).epsilon(z < 10.0 ? 1e-13 : 1e-9));
            CHECK(bessel_zero(m, i) < bessel_zero(m + 1, i));
            CHECK(bessel_zero(m + 1, i) < bessel_zero(m, i + 1));
        }
    CHECK_THROWS_AS(bessel_zero(0, 0), lyb::InputError);

    const auto d = disk_spectrum(1.0, 200);
    CHECK(d.eigenvalues[0] == doctest::Approx(std::pow(bessel_zero(0, 1), 2)).epsilon(1e-15));
    CHECK(d.eigenvalues[1] == d.eigenvalues[2]);
    CHECK(d.eigenvalues[1] == doctest::Approx(std::pow(bessel_zero(1, 1), 2)).epsilon(1e-15));
    const auto d2 = disk_spectrum(2.0, 200);
    for (std::size_t i = 0; i < 200; ++i) CHECK(d2.eigenvalues[i] == doctest::Approx(d.eigenvalues[i] / 4.0).epsilon(1e-15));
    for (std::size_t i = 0; i < d.count(); ++i) {
        CHECK(d.eigenvalues[i] > 0.0);
        if (i > 0) CHECK(d.eigenvalues[i] >= d.eigenvalues[i - 1]);
        // Counting bound N_lambda <= V lambda / (4 pi).
        CHECK(static_cast<double>(counting_function(d, d.eigenvalues[i])) <= lyb::constants::counting_bound(pi, d.eigenvalues[i]));
    }
}

TEST_CASE("finite differences on the unit square") {
    const auto sq = Polygon::rectangle(1.0, 1.0);
    const double h = 1.0 / 32.0;
    CHECK(fd_interior_count(sq, h) == 31 * 31);
    const auto s = fd_spectrum(sq, h, 30, false);
    CHECK(s.source == Source::FiniteDifference);
    std::vector<double> discrete;
    for (int m = 1; m < 32; ++m)
        for (int n = 1; n < 32; ++n) {
            const double a = std::sin(m * pi * h / 2.0), b = std::sin(n * pi * h / 2.0);
            discrete.push_back(4.0 / (h * h) * (a * a + b * b));
        }
    std::sort(discrete.begin(), discrete.end());
    const auto exact = rectangle_spectrum(1.0, 1.0, 30);
    for (std::size_t i = 0; i < 30; ++i) {
        CHECK(s.eigenvalues[i] == doctest::Approx(discrete[i]).epsilon(1e-9));
        CHECK(s.eigenvalues[i] <= exact.eigenvalues[i]);
    }

    const auto e = fd_spectrum(sq, 1.0 / 64.0, 10, true);
    CHECK(e.extrapolated);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(e.eigenvalues[i] == doctest::Approx(exact.eigenvalues[i]).epsilon(1e-3));
        CHECK(std::abs(e.eigenvalues[i] - exact.eigenvalues[i]) <= 3.0 * e.errors[i] + 1e-9 * exact.eigenvalues[i]);
    }
    CHECK_THROWS_AS(fd_spectrum(sq, 0.25, 20, false), lyb::InputError);
    CHECK_THROWS_AS(fd_spectrum(sq, 0.0, 2, false), lyb::InputError);
}

TEST_CASE("finite differences on a rectangle use the exact lattice mask") {
    // Sides on lattice lines are excluded, so a 2 x 1 rectangle at h = 1/16
    // reproduces the discrete separable spectrum.
    const double h = 1.0 / 16.0;
    const auto s = fd_spectrum(Polygon::rectangle(2.0, 1.0), h, 12, false);
    std::vector<double> d;
    for (int m = 1; m < 32; ++m)
        for (int n = 1; n < 16; ++n) {
            const double a = std::sin(m * pi * h / 4.0), b = std::sin(n * pi * h / 2.0);
            d.push_back(4.0 / (h * h) * (a * a + b * b));
        }
    std::sort(d.begin(), d.end());
    for (std::size_t i = 0; i < 12; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(d[i]).epsilon(1e-9));
}

TEST_CASE("L-shaped domain") {
    // [-1, 1]^2 without the quadrant x, y > 0.
    const Polygon L({{-1.0, -1.0}, {1.0, -1.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}, {-1.0, 1.0}});
    const auto e = fd_spectrum(L, 1.0 / 32.0, 3, true);
    CHECK(e.eigenvalues[0] == doctest::Approx(9.6397).epsilon(0.01));
    CHECK(e.eigenvalues[0] < e.eigenvalues[1]);
}

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lybound/geometry/polygon.hpp"

namespace lyb::spectra {

enum class Source { ExactRectangle, ExactDisk, FiniteDifference };

struct Spectrum {
    std::vector<double> eigenvalues;  ///< nondecreasing
    std::vector<double> errors;       ///< per-eigenvalue error estimate, zero for exact spectra
    Source source = Source::ExactRectangle;
    double h = 0.0;             ///< grid spacing (finite differences)
    bool extrapolated = false;  ///< Richardson from h and h/2

    std::size_t count() const { return eigenvalues.size(); }
    std::string tag() const;
};

/// The kmax smallest pi^2 (m^2/a^2 + n^2/b^2), m, n >= 1.
Spectrum rectangle_spectrum(double a, double b, std::size_t kmax);

/// i-th positive zero of J_m (i >= 1), bracketed on a scan and bisected to full precision.
double bessel_zero(int m, int i);

/// The kmax smallest j_{m,i}^2 / R^2, counted twice for m >= 1.
Spectrum disk_spectrum(double radius, std::size_t kmax);

struct FdOptions {
    double residual_tol = 1e-8;  ///< relative Ritz residual
    std::size_t max_basis = 0;   ///< 0: chosen from kmax
    unsigned seed = 12345;
};

/// 5-point Dirichlet Laplacian on the lattice points (i h, j h) strictly
/// inside the polygon. With `extrapolate`, also solves at h/2 and returns
/// (4 lambda_{h/2} - lambda_h) / 3 with error |lambda_h - lambda_{h/2}| / 3.
Spectrum fd_spectrum(const geometry::Polygon& p, double h, std::size_t kmax, bool extrapolate,
                     const FdOptions& opt = {});

/// Number of lattice points strictly inside the polygon.
std::size_t fd_interior_count(const geometry::Polygon& p, double h);

/// Sum of the k smallest eigenvalues. InputError if k exceeds the count.
double partial_sums(const Spectrum& s, std::size_t k);

/// All prefix sums.
std::vector<double> prefix_sums(const Spectrum& s);

/// Number of eigenvalues <= t.
std::size_t counting_function(const Spectrum& s, double t);

}  // namespace lyb::spectra

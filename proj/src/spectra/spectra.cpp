#include "lybound/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <queue>
#include <random>
#include <tuple>
#include <unordered_map>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "lybound/errors.hpp"

namespace lyb::spectra {

namespace {

constexpr double kPi = std::numbers::pi;

using Dense = Eigen::MatrixXd;
using Sparse = Eigen::SparseMatrix<double>;

double bisect_zero(int m, double lo, double hi) {
    double flo = std::cyl_bessel_j(static_cast<double>(m), lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = std::cyl_bessel_j(static_cast<double>(m), mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) lo = mid, flo = fm;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Zeros of J_m in (0, x_max], at most `limit` of them. Consecutive zeros are
// more than pi apart for m >= 1 and about pi for m = 0, so a step of 0.25
// brackets each one separately.
std::vector<double> bessel_zeros(int m, double x_max, std::size_t limit) {
    std::vector<double> z;
    const double step = 0.25;
    double a = m == 0 ? 0.5 : static_cast<double>(m);
    double fa = std::cyl_bessel_j(static_cast<double>(m), a);
    while (z.size() < limit && a < x_max) {
        const double b = a + step;
        const double fb = std::cyl_bessel_j(static_cast<double>(m), b);
        if (fb == 0.0 || (fa > 0.0) != (fb > 0.0)) {
            const double r = fb == 0.0 ? b : bisect_zero(m, a, b);
            if (r <= x_max) z.push_back(r);
        }
        a = b;
        fa = fb;
    }
    return z;
}

struct Lattice {
    std::vector<std::pair<long, long>> points;
    std::unordered_map<long long, std::size_t> index;
    long span = 0;

    long long key(long i, long j) const { return static_cast<long long>(i) * (2 * span + 1) + j; }
};

Lattice interior_lattice(const geometry::Polygon& p, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw InputError("grid spacing must be positive");
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& v : p.vertices()) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    Lattice L;
    const long i0 = static_cast<long>(std::ceil(xmin / h)), i1 = static_cast<long>(std::floor(xmax / h));
    const long j0 = static_cast<long>(std::ceil(ymin / h)), j1 = static_cast<long>(std::floor(ymax / h));
    L.span = std::max({std::labs(i0), std::labs(i1), std::labs(j0), std::labs(j1)}) + 1;
    for (long i = i0; i <= i1; ++i)
        for (long j = j0; j <= j1; ++j)
            if (geometry::strictly_inside(p, {static_cast<double>(i) * h, static_cast<double>(j) * h})) {
                L.index.emplace(L.key(i, j), L.points.size());
                L.points.emplace_back(i, j);
            }
    return L;
}

Sparse laplacian(const Lattice& L, double h) {
    const double s = 1.0 / (h * h);
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(5 * L.points.size());
    for (std::size_t r = 0; r < L.points.size(); ++r) {
        const auto [i, j] = L.points[r];
        t.emplace_back(r, r, 4.0 * s);
        for (const auto& [di, dj] : {std::pair{1L, 0L}, {-1L, 0L}, {0L, 1L}, {0L, -1L}}) {
            const auto it = L.index.find(L.key(i + di, j + dj));
            if (it != L.index.end()) t.emplace_back(r, it->second, -s);
        }
    }
    Sparse A(static_cast<Eigen::Index>(L.points.size()), static_cast<Eigen::Index>(L.points.size()));
    A.setFromTriplets(t.begin(), t.end());
    return A;
}

struct Eigs {
    std::vector<double> values;
    std::vector<double> residuals;
};

// Smallest eigenvalues of a sparse SPD matrix: block Lanczos on A^{-1} with
// full reorthogonalisation and Rayleigh-Ritz on A.
Eigs smallest_eigenvalues(const Sparse& A, std::size_t k, const FdOptions& opt) {
    const auto n = static_cast<std::size_t>(A.rows());
    Eigs out;
    if (n <= 600) {
        Eigen::SelfAdjointEigenSolver<Dense> es{Dense(A)};
        for (std::size_t i = 0; i < k; ++i) {
            out.values.push_back(es.eigenvalues()(static_cast<Eigen::Index>(i)));
            out.residuals.push_back(0.0);
        }
        return out;
    }
    Eigen::SimplicialLDLT<Sparse> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw ConvergenceError("sparse factorisation failed");

    const Eigen::Index block = 4;
    const std::size_t cap = std::min(n, opt.max_basis ? opt.max_basis : 8 * k + 400);
    std::size_t check_at = std::min(cap, 2 * k + 40);
    Dense Q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cap));
    Eigen::Index dim = 0;
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd;

    // Orthonormalise columns of W against Q[:, 0:dim] and each other; append.
    auto append = [&](Dense W) {
        for (Eigen::Index c = 0; c < W.cols() && dim < static_cast<Eigen::Index>(cap); ++c) {
            Eigen::VectorXd v = W.col(c);
            for (int attempt = 0; attempt < 3; ++attempt) {
                const double before = v.norm();
                for (int pass = 0; pass < 2; ++pass)
                    if (dim > 0) v -= Q.leftCols(dim) * (Q.leftCols(dim).transpose() * v);
                const double after = v.norm();
                if (after > 1e-10 * before && after > 0.0) {
                    Q.col(dim++) = v / after;
                    break;
                }
                for (Eigen::Index r = 0; r < v.size(); ++r) v(r) = nd(rng);
            }
        }
    };

    Dense start(static_cast<Eigen::Index>(n), block);
    for (Eigen::Index c = 0; c < block; ++c)
        for (Eigen::Index r = 0; r < start.rows(); ++r) start(r, c) = nd(rng);
    append(start);
    Eigen::Index next = 0;  // first column of the block to expand
    while (true) {
        while (static_cast<std::size_t>(dim) < check_at) {
            const Eigen::Index cols = std::min<Eigen::Index>(block, dim - next);
            if (cols <= 0) throw ConvergenceError("Krylov space collapsed");
            Dense W = ldlt.solve(Q.middleCols(next, cols));
            next += cols;
            append(std::move(W));
        }
        const Dense Qd = Q.leftCols(dim);
        const Dense AQ = A * Qd;
        Dense H = Qd.transpose() * AQ;
        H = 0.5 * (H + H.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Dense> es(H);
        bool ok = true;
        out.values.assign(k, 0.0);
        out.residuals.assign(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            const auto y = es.eigenvectors().col(static_cast<Eigen::Index>(i));
            const double theta = es.eigenvalues()(static_cast<Eigen::Index>(i));
            const double r = (AQ * y - theta * (Qd * y)).norm();
            out.values[i] = theta;
            out.residuals[i] = r;
            if (r > opt.residual_tol * theta) ok = false;
        }
        if (ok || static_cast<std::size_t>(dim) >= n) return out;
        if (check_at >= cap) throw ConvergenceError("eigensolver did not reach the residual tolerance");
        check_at = std::min(cap, check_at + 8 * block);
    }
}

}  // namespace

std::string Spectrum::tag() const {
    switch (source) {
        case Source::ExactRectangle: return "exact-rectangle";
        case Source::ExactDisk: return "exact-disk";
        case Source::FiniteDifference: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "finite-difference(h=%g%s)", h, extrapolated ? ", extrapolated" : "");
            return buf;
        }
    }
    return "unknown";
}

Spectrum rectangle_spectrum(double a, double b, std::size_t kmax) {
    if (!(a > 0.0) || !(b > 0.0)) throw InputError("rectangle sides must be positive");
    Spectrum s;
    s.source = Source::ExactRectangle;
    const double pa = kPi * kPi / (a * a), pb = kPi * kPi / (b * b);
    using Item = std::tuple<double, long, long>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(pa + pb, 1, 1);
    while (s.eigenvalues.size() < kmax) {
        const auto [v, m, n] = heap.top();
        heap.pop();
        s.eigenvalues.push_back(v);
        // Each (m, n) is reached once: along n from (m, 1), along m only on n = 1.
        heap.emplace(pa * double(m * m) + pb * double((n + 1) * (n + 1)), m, n + 1);
        if (n == 1) heap.emplace(pa * double((m + 1) * (m + 1)) + pb, m + 1, 1);
    }
    s.errors.assign(s.eigenvalues.size(), 0.0);
    return s;
}

double bessel_zero(int m, int i) {
    if (m < 0 || i < 1) throw InputError("Bessel zero needs m >= 0, i >= 1");
    // j_{m,i} < m + pi (i + m/2) + 1 comfortably.
    const auto z = bessel_zeros(m, m + kPi * (i + 0.5 * m + 1.0) + 2.0, static_cast<std::size_t>(i));
    if (z.size() < static_cast<std::size_t>(i)) throw ConvergenceError("Bessel zero bracketing failed");
    return z[static_cast<std::size_t>(i) - 1];
}

Spectrum disk_spectrum(double radius, std::size_t kmax) {
    if (!(radius > 0.0)) throw InputError("radius must be positive");
    Spectrum s;
    s.source = Source::ExactDisk;
    if (kmax == 0) return s;
    // N(x^2) ~ x^2 / 4 for the unit disk; grow the cutoff until kmax values fit.
    double x = 2.0 * std::sqrt(static_cast<double>(kmax)) + 10.0;
    while (true) {
        std::vector<double> z;
        for (int m = 0; m < x; ++m) {
            const auto zm = bessel_zeros(m, x, static_cast<std::size_t>(-1));
            if (zm.empty()) break;
            for (double r : zm) {
                z.push_back(r);
                if (m > 0) z.push_back(r);
            }
        }
        if (z.size() >= kmax) {
            std::sort(z.begin(), z.end());
            z.resize(kmax);
            for (double r : z) s.eigenvalues.push_back(r * r / (radius * radius));
            s.errors.assign(kmax, 0.0);
            return s;
        }
        x *= 1.3;
    }
}

std::size_t fd_interior_count(const geometry::Polygon& p, double h) { return interior_lattice(p, h).points.size(); }

Spectrum fd_spectrum(const geometry::Polygon& p, double h, std::size_t kmax, bool extrapolate, const FdOptions& opt) {
    auto solve = [&](double hh) {
        const auto L = interior_lattice(p, hh);
        if (L.points.size() < kmax + 1) throw InputError("insufficient interior grid points for the requested modes");
        return smallest_eigenvalues(laplacian(L, hh), kmax, opt);
    };
    Spectrum s;
    s.source = Source::FiniteDifference;
    s.h = h;
    s.extrapolated = extrapolate;
    if (kmax == 0) return s;
    const auto coarse = solve(h);
    if (!extrapolate) {
        s.eigenvalues = coarse.values;
        s.errors = coarse.residuals;  // solver error only
        return s;
    }
    const auto fine = solve(0.5 * h);
    for (std::size_t i = 0; i < kmax; ++i) {
        s.eigenvalues.push_back((4.0 * fine.values[i] - coarse.values[i]) / 3.0);
        s.errors.push_back(std::abs(coarse.values[i] - fine.values[i]) / 3.0);
    }
    return s;
}

double partial_sums(const Spectrum& s, std::size_t k) {
    if (k > s.count()) throw InputError("k exceeds the number of computed eigenvalues");
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += s.eigenvalues[i];
    return acc;
}

std::vector<double> prefix_sums(const Spectrum& s) {
    std::vector<double> out(s.count());
    double acc = 0.0;
    for (std::size_t i = 0; i < s.count(); ++i) out[i] = acc += s.eigenvalues[i];
    return out;
}

std::size_t counting_function(const Spectrum& s, double t) {
    return static_cast<std::size_t>(std::upper_bound(s.eigenvalues.begin(), s.eigenvalues.end(), t) - s.eigenvalues.begin());
}

}  // namespace lyb::spectra

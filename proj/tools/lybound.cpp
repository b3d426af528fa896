#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lybound/bounds.hpp"
#include "lybound/constants.hpp"
#include "lybound/errors.hpp"
#include "lybound/io.hpp"
#include "lybound/minimizers.hpp"
#include "lybound/spectra.hpp"

namespace {

using lyb::io::json;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
    return s;
}

// Exact spectrum for rectangles and disks, finite differences when h > 0, none otherwise.
std::optional<lyb::spectra::Spectrum> domain_spectrum(const lyb::io::Domain& d, std::size_t kmax, double h,
                                                      bool extrapolate) {
    double a = 0.0, b = 0.0;
    if (d.kind == lyb::io::DomainKind::Disk) return lyb::spectra::disk_spectrum(d.radius, kmax);
    if (d.kind == lyb::io::DomainKind::Polygon && lyb::geometry::is_axis_aligned_rectangle(*d.polygon, &a, &b))
        return lyb::spectra::rectangle_spectrum(a, b, kmax);
    if (h > 0.0) return lyb::spectra::fd_spectrum(*d.polygon, h, kmax, extrapolate);
    return std::nullopt;
}

int cmd_constants(int pmax) {
    const auto& c = lyb::constants::default_constants();
    json out = {{"c0", c.c0}, {"c1", c.c1}, {"c1_proof", c.c1_proof}, {"c1_ratio", c.c1 / c.c1_proof},
                {"c2", c.c2}, {"c3", c.c3}, {"weyl2", c.weyl2}};
    json rows = json::array();
    for (const auto& r : lyb::constants::a_growth_check(pmax))
        rows.push_back({{"p", r.p}, {"log2_A", r.log2_a}, {"log2_bound", r.log2_bound}, {"ok", r.ok}});
    out["growth"] = rows;
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_bounds(const std::string& path, std::size_t kmax, double alpha, double h) {
    const auto d = lyb::io::domain_from_json(lyb::io::read_json_file(path));
    const auto spec = domain_spectrum(d, kmax, h, true);
    const std::vector<double> sums = spec ? lyb::spectra::prefix_sums(*spec) : std::vector<double>{};
    std::cout << "k,trueSum,liYau,melasUniform,melasBranch,corrected,correctedAlpha0,correctedAlpha1,weyl2,activeSides\n";
    if (d.kind == lyb::io::DomainKind::Polygon) {
        const auto data = lyb::bounds::polygon_bound_data(*d.polygon);
        for (const auto& r : lyb::bounds::bound_report(data, kmax, alpha, sums))
            std::cout << r.k << ',' << (r.true_sum ? num(*r.true_sum) : "") << ',' << num(r.li_yau) << ','
                      << num(r.melas_uniform) << ',' << num(r.melas_branch) << ',' << num(r.corrected) << ','
                      << num(r.corrected_alpha0) << ',' << num(r.corrected_alpha1) << ',' << num(r.weyl2) << ','
                      << join(r.active) << '\n';
        return 0;
    }
    const double V = d.area(), I = d.inertia(), P = d.perimeter();
    const auto arcs = d.boundary_arcs();
    const auto terms = lyb::bounds::arc_terms(arcs, V);
    for (std::size_t k = 1; k <= kmax; ++k) {
        const double kd = static_cast<double>(k);
        const auto m = lyb::bounds::melas_bounds(V, I, kd);
        const auto c = lyb::bounds::general_corrected_bound(V, I, terms, kd, alpha);
        std::cout << k << ',' << (k <= sums.size() ? num(sums[k - 1]) : "") << ',' << num(lyb::bounds::li_yau_sum(V, kd))
                  << ',' << num(m.uniform) << ',' << num(m.branch) << ',' << num(c.value) << ','
                  << num(lyb::bounds::general_corrected_bound(V, I, terms, kd, 0.0).value) << ','
                  << num(lyb::bounds::general_corrected_bound(V, I, terms, kd, 1.0).value) << ','
                  << num(lyb::bounds::weyl_two_term(V, P, kd)) << ',' << join(c.active) << '\n';
    }
    return 0;
}

int cmd_spectrum(const std::string& path, std::size_t kmax, double h, bool extrapolate) {
    const auto d = lyb::io::domain_from_json(lyb::io::read_json_file(path));
    const auto s = domain_spectrum(d, kmax, h, extrapolate);
    if (!s) throw lyb::InputError("no exact spectrum for this domain; pass --h for finite differences");
    std::cerr << "# " << s->tag() << '\n';
    std::cout << "index,eigenvalue,errorBar\n";
    for (std::size_t i = 0; i < s->count(); ++i)
        std::cout << i + 1 << ',' << num(s->eigenvalues[i]) << ',' << num(s->errors[i]) << '\n';
    return 0;
}

int cmd_minimizer(const std::string& type, double V, double I, double k, double eps, double delta, std::size_t n,
                  const std::string& emit) {
    namespace m = lyb::minimizers;
    m::RadialProfile p;
    json info = {{"type", type}, {"V", V}, {"k", k}};
    if (type == "ly") {
        p = m::phi_li_yau(V, k);
    } else if (type == "melas") {
        const auto mp = m::phi_melas(V, I, k);
        p = mp.profile;
        info["branch"] = mp.branch == m::MelasBranch::LargeK ? "large-k" : "small-k";
        info["L"] = mp.slope;
        info["threshold"] = mp.threshold;
        info["inertia_admissible"] = mp.inertia_admissible;
    } else if (type == "corrected") {
        p = m::phi_corrected(V, eps, delta, k);
    } else {
        throw lyb::InputError("unknown profile type " + type);
    }
    info["mass"] = m::profile_mass(p);
    info["energy"] = m::profile_energy(p);
    if (emit == "json") {
        info["breakpoints"] = p.r;
        info["values"] = p.v;
        std::cout << info.dump(2) << '\n';
        return 0;
    }
    std::cerr << "# " << info.dump() << '\n';
    std::cout << "r,phi\n";
    const double R = 1.1 * p.support();
    for (std::size_t i = 0; i <= n; ++i) {
        const double r = R * static_cast<double>(i) / static_cast<double>(n);
        std::cout << num(r) << ',' << num(p(r)) << '\n';
    }
    return 0;
}

int cmd_geometry(const std::string& path, double lambda) {
    const auto d = lyb::io::domain_from_json(lyb::io::read_json_file(path));
    json out;
    out["area"] = d.area();
    out["perimeter"] = d.perimeter();
    out["inertia"] = d.inertia();
    out["inertia_lower"] = d.area() * d.area() / (2.0 * std::numbers::pi);
    if (d.kind == lyb::io::DomainKind::Polygon) {
        const auto& p = *d.polygon;
        const auto in = lyb::geometry::moment_of_inertia(p);
        out["centroid"] = {in.center.x, in.center.y};
        json sides = json::array();
        for (std::size_t j = 0; j < p.size(); ++j) {
            const double dj = lyb::geometry::middle_third_distance(p, j);
            json s = {{"length", p.side(j).length()}, {"d", dj}};
            const double t = lyb::geometry::polygon_side_threshold(p, j);
            s["threshold"] = std::isfinite(t) ? json(t) : json("inf");
            if (lambda > 0.0) s["squares"] = lyb::geometry::square_count_lower(p.side(j).length(), lambda, true);
            sides.push_back(s);
        }
        out["sides"] = sides;
    } else {
        const auto arcs = d.boundary_arcs();
        const auto terms = lyb::bounds::arc_terms(arcs, d.area());
        json list = json::array();
        for (std::size_t j = 0; j < arcs.size(); ++j) {
            json a = {{"length", arcs[j].length()}, {"max_kappa", arcs[j].max_curvature()}, {"k_j", terms[j].threshold}};
            if (lambda > 0.0) a["squares"] = lyb::geometry::square_count_lower(arcs[j].length(), lambda, false);
            list.push_back(a);
        }
        out["arcs"] = list;
        if (lambda > 0.0) {
            const auto ev = lyb::geometry::extended_volume_bound(arcs, d.area(), lambda);
            out["extended_volume"] = {{"bound", ev.bound}, {"lambda1", ev.lambda1}, {"doubled_ok", ev.doubled_ok}};
        }
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lower bounds for sums of Dirichlet eigenvalues on planar domains"};
    app.require_subcommand(1);
    // --h is the grid spacing, so help is --help only.
    app.set_help_flag("--help", "Print this help message and exit");

    int pmax = 40;
    auto* constants = app.add_subcommand("constants", "Print the constants table and the A_p(p) growth check as JSON");
    constants->add_option("--pmax", pmax, "largest p in the growth check (<= 64)")->check(CLI::Range(1, 64));

    std::string domain;
    std::size_t kmax = 100;
    double alpha = 0.5, h = 0.0, lambda = 0.0;
    bool extrapolate = false;
    auto* bounds = app.add_subcommand("bounds", "CSV of every lower bound for k = 1..kmax");
    bounds->set_help_flag("--help", "Print this help message and exit");
    bounds->add_option("--domain", domain, "domain JSON file")->required();
    bounds->add_option("--kmax", kmax)->check(CLI::PositiveNumber);
    bounds->add_option("--alpha", alpha)->check(CLI::Range(0.0, 1.0));
    bounds->add_option("--h", h, "grid spacing for a finite-difference trueSum on general polygons");

    auto* spectrum = app.add_subcommand("spectrum", "CSV of eigenvalues with error bars");
    spectrum->set_help_flag("--help", "Print this help message and exit");
    spectrum->add_option("--domain", domain, "domain JSON file")->required();
    spectrum->add_option("--kmax", kmax)->check(CLI::PositiveNumber);
    spectrum->add_option("--h", h, "grid spacing (finite differences)");
    spectrum->add_flag("--extrapolate", extrapolate, "Richardson extrapolation from h and h/2");

    std::string type = "ly", emit = "csv";
    double V = 1.0, I = 1.0 / 6.0, k = 10.0, eps = 1e-3, delta = 0.5;
    std::size_t samples = 200;
    auto* minimizer = app.add_subcommand("minimizer", "Radial minimiser profile samples");
    minimizer->add_option("--type", type)->check(CLI::IsMember({"ly", "melas", "corrected"}));
    minimizer->add_option("--V", V, "area");
    minimizer->add_option("--I", I, "moment of inertia (melas)");
    minimizer->add_option("--k", k);
    minimizer->add_option("--eps", eps, "correction size (corrected)");
    minimizer->add_option("--delta", delta, "correction decay (corrected)");
    minimizer->add_option("--samples", samples);
    minimizer->add_option("--emit", emit)->check(CLI::IsMember({"csv", "json"}));

    auto* geometry = app.add_subcommand("geometry", "Geometric quantities of a domain as JSON");
    geometry->add_option("--domain", domain, "domain JSON file")->required();
    geometry->add_option("--lambda", lambda, "energy scale for square counts and volume certificates");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*constants) return cmd_constants(pmax);
        if (*bounds) return cmd_bounds(domain, kmax, alpha, h);
        if (*spectrum) return cmd_spectrum(domain, kmax, h, extrapolate);
        if (*minimizer) return cmd_minimizer(type, V, I, k, eps, delta, samples, emit);
        if (*geometry) return cmd_geometry(domain, lambda);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

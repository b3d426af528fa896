#include "lybound/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lybound/errors.hpp"

namespace lyb::constants {

const ConstantsTable<double>& default_constants() {
    static const ConstantsTable<double> table = ConstantsTable<double>::make();
    return table;
}

double epsilon_k(double k, double c1) {
    const double x = 2.0 * std::numbers::pi * k / c1;
    if (!(x > 1.0)) throw DomainError("epsilon(k) needs 2 pi k / c1 > 1");
    return 2.0 / std::sqrt(std::log2(x));
}

namespace {

void check_pn(int p, int n) {
    if (p < 1) throw InputError("A_n(p) needs p >= 1");
    if (n < 0) throw InputError("A_n(p) needs n >= 0");
}

}  // namespace

BigInt a_seq_exact(int p, int n) {
    check_pn(p, n);
    const BigInt pp = p;
    const BigInt c_two = 3 + BigInt(726) * 4096 * pp * pp * pp * pp;
    const BigInt c_one = BigInt(150) * 81 * pp * pp;
    BigInt prev = 1, cur = 1;  // A_{n-2}, A_{n-1}
    if (n <= 1) return 1;
    for (int i = 2; i <= n; ++i) {
        BigInt next = c_two * prev + c_one * cur;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double a_seq_log2(int p, int n) {
    check_pn(p, n);
    const double pd = p;
    const double l_two = std::log2(3.0 + 726.0 * 4096.0 * pd * pd * pd * pd);
    const double l_one = std::log2(150.0 * 81.0 * pd * pd);
    double prev = 0.0, cur = 0.0;
    for (int i = 2; i <= n; ++i) {
        // log2(2^{a} + 2^{b}) with a = l_one + cur >= b in practice; symmetric form anyway.
        const double a = l_one + cur, b = l_two + prev;
        const double hi = std::max(a, b), lo = std::min(a, b);
        const double next = hi + std::log2(1.0 + std::exp2(lo - hi));
        prev = cur;
        cur = next;
    }
    return cur;
}

double log2_big(const BigInt& x) {
    if (x <= 0) throw DomainError("log2 of a nonpositive integer");
    const auto msb = static_cast<long>(boost::multiprecision::msb(x));
    if (msb < 53) return std::log2(x.convert_to<double>());
    const BigInt top = x >> static_cast<unsigned>(msb - 52);
    return static_cast<double>(msb - 52) + std::log2(top.convert_to<double>());
}

std::vector<GrowthRow> a_growth_check(int p_max) {
    if (p_max < 1 || p_max > 64) throw InputError("growth check supports 1 <= p_max <= 64");
    const BigInt c0 = BigInt(7) * boost::multiprecision::pow(BigInt(10), 22);
    const double log2_c0 = std::log2(7.0) + 22.0 * std::log2(10.0);
    std::vector<GrowthRow> rows;
    rows.reserve(static_cast<std::size_t>(p_max));
    for (int p = 1; p <= p_max; ++p) {
        const BigInt a = a_seq_exact(p, p);
        const BigInt bound = c0 << static_cast<unsigned>((p + 1) * (p + 1));
        rows.push_back({p, log2_big(a), log2_c0 + static_cast<double>((p + 1) * (p + 1)), a <= bound});
    }
    return rows;
}

int optimal_p(double area, double lambda, double c1) {
    const double x = area * lambda / c1;
    if (!(x > 1.0)) throw DomainError("optimal p needs V lambda > c1");
    const double root = std::sqrt(2.0 * std::log2(x));
    const auto p = static_cast<int>(std::floor(root * (1.0 + 1e-12))) - 1;
    return std::max(p, 1);
}

BetaSq beta_sq(int p, double area, bool general_domain) {
    if (!(area > 0.0)) throw InputError("beta needs a positive area");
    const double denom = general_domain ? std::numbers::pi : 4.0 * std::numbers::pi;
    BetaSq b;
    const BigInt a = a_seq_exact(p, p);
    b.log2 = log2_big(a) + 2.0 * std::log2(area) - std::log2(denom);
    b.value = b.log2 < 1000.0 ? a.convert_to<double>() * area * area / denom
                              : std::numeric_limits<double>::infinity();
    return b;
}

double counting_bound(double area, double lambda) {
    if (!(area > 0.0) || !(lambda >= 0.0)) throw InputError("counting bound needs V > 0, lambda >= 0");
    return area * lambda / (4.0 * std::numbers::pi);
}

}  // namespace lyb::constants

#pragma once

// Zeta function assembly from point counts and verification reports:
// archimedean root moduli, the functional equation, and Newton polygon
// slope symmetry.

#include "core.hpp"
#include "series.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <optional>
#include <string>

namespace dwork {

// Z(T) = numerator(T)^(+-1) / prod (1 - p^j T)^mult. The numerator carries
// the interesting reciprocal roots; for even-dimensional ambient space it
// sits in the denominator (numerator_is_inverted).
struct ZetaData {
    long p = 0;
    int n = 0;  // number of ambient variables (hypersurface in P^(n-1))
    int d = 0;
    std::optional<long> gamma;
    std::string method;
    std::vector<BigInt> numerator;  // constant term first, numerator[0] = 1
    bool numerator_is_inverted = false;
    std::vector<std::pair<int, int>> denominator_factors;  // (mult, j)
    std::vector<std::pair<int, BigInt>> counts;            // (s, N_s)
    std::map<std::string, bool> checks;

    int weight() const { return n - 2; }
};

// Power sums t_s = sum omega^s of the reciprocal roots of P = prod(1 - wT),
// straight from the coefficients by Newton's identities.
inline std::vector<BigInt> reciprocal_root_power_sums(const std::vector<BigInt>& poly, int S) {
    if (poly.empty() || poly[0] != 1)
        throw contract_error("reciprocal_root_power_sums: constant term must be 1");
    int k_max = static_cast<int>(poly.size()) - 1;
    // P = sum (-1)^k e_k T^k
    std::vector<BigInt> e(k_max + 1);
    for (int k = 0; k <= k_max; ++k) e[k] = (k % 2 == 0) ? poly[k] : -poly[k];
    std::vector<BigInt> t(S + 1, BigInt(0));
    for (int s = 1; s <= S; ++s) {
        BigInt acc = 0;
        for (int i = 1; i < s && i <= k_max; ++i) {
            BigInt term = e[i] * t[s - i];
            if (i % 2 == 0) acc -= term; else acc += term;
        }
        if (s <= k_max) acc += (s % 2 == 0 ? -BigInt(s) : BigInt(s)) * e[s];
        t[s] = acc;
    }
    return std::vector<BigInt>(t.begin() + 1, t.end());
}

// N_s regenerated from the rational shape of Z.
inline BigInt zeta_count(const ZetaData& z, int s) {
    BigInt out = 0;
    for (auto& [mult, j] : z.denominator_factors)
        out += BigInt(mult) * pow_big(pow_big(z.p, j), s);
    if (z.numerator.size() > 1) {
        auto t = reciprocal_root_power_sums(z.numerator, s);
        out += z.numerator_is_inverted ? t[s - 1] : -t[s - 1];
    }
    return out;
}

// Solve for the numerator of Z from exact counts: the denominator contributes
// sum mult * p^(js) to N_s and the numerator roots the rest. Coefficients are
// recovered by Newton's identities over exact rationals and must come out
// integral; the fit is then re-expanded and compared against every input.
inline ZetaData zeta_fit(const std::vector<std::pair<int, BigInt>>& counts,
                         const std::vector<std::pair<int, int>>& denominator_factors,
                         int num_degree, long p, bool numerator_is_inverted = false) {
    if (num_degree < 0) throw contract_error("zeta_fit: negative numerator degree");
    std::map<int, BigInt> by_s;
    for (auto& [s, N] : counts) {
        if (s < 1) throw contract_error("zeta_fit: counts need s >= 1");
        by_s[s] = N;
    }
    std::vector<Rational> powersums;
    for (int s = 1; s <= num_degree; ++s) {
        auto it = by_s.find(s);
        if (it == by_s.end())
            throw contract_error("zeta_fit: missing count for s = " + std::to_string(s));
        BigInt denom_part = 0;
        for (auto& [mult, j] : denominator_factors)
            denom_part += BigInt(mult) * pow_big(pow_big(p, j), s);
        BigInt t = it->second - denom_part;
        powersums.emplace_back(numerator_is_inverted ? t : -t);
    }
    auto poly = traces_to_charpoly(powersums, num_degree);
    ZetaData z;
    z.p = p;
    z.numerator_is_inverted = numerator_is_inverted;
    z.denominator_factors = denominator_factors;
    z.counts = counts;
    for (int k = 0; k <= num_degree; ++k) {
        if (boost::multiprecision::denominator(poly[k]) != 1)
            throw precision_error("zeta_fit: non-integer numerator coefficient at degree " +
                                  std::to_string(k));
        z.numerator.push_back(boost::multiprecision::numerator(poly[k]));
    }
    for (auto& [s, N] : counts)
        if (zeta_count(z, s) != N)
            throw precision_error("zeta_fit: fitted zeta fails to reproduce N_" +
                                  std::to_string(s));
    z.checks["count_round_trip"] = true;
    return z;
}

namespace detail {

// Remainder of a by b over exact rationals (b nonzero).
inline std::vector<Rational> poly_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    size_t db = b.size();
    while (db > 0 && b[db - 1] == 0) --db;
    if (db == 0) throw contract_error("poly_rem: division by zero polynomial");
    while (a.size() >= db) {
        Rational f = a.back() / b[db - 1];
        for (size_t i = 0; i < db; ++i) a[a.size() - db + i] -= f * b[i];
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

inline std::vector<Rational> poly_gcd(std::vector<Rational> a, std::vector<Rational> b) {
    while (!b.empty()) {
        auto r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    // monic normalization
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

inline std::vector<Rational> poly_div_exact(std::vector<Rational> a,
                                            const std::vector<Rational>& b) {
    size_t db = b.size();
    if (db == 0 || b[db - 1] == 0) throw contract_error("poly_div_exact: bad divisor");
    std::vector<Rational> q(a.size() >= db ? a.size() - db + 1 : 0, Rational(0));
    while (a.size() >= db) {
        Rational f = a.back() / b[db - 1];
        q[a.size() - db] = f;
        for (size_t i = 0; i < db; ++i) a[a.size() - db + i] -= f * b[i];
        a.pop_back();
    }
    for (auto& c : a)
        if (c != 0) throw contract_error("poly_div_exact: division is not exact");
    return q;
}

// Repeated roots make companion eigenvalues ill-conditioned, so the modulus
// check runs on the square-free part P / gcd(P, P').
inline std::vector<Rational> square_free_part(const std::vector<BigInt>& poly) {
    std::vector<Rational> a(poly.begin(), poly.end());
    std::vector<Rational> da;
    for (size_t i = 1; i < a.size(); ++i) da.push_back(a[i] * Rational(static_cast<long>(i)));
    auto g = poly_gcd(a, da);
    if (g.size() <= 1) return a;
    return poly_div_exact(a, g);
}

inline std::vector<std::complex<double>> reciprocal_roots(const std::vector<Rational>& sf) {
    size_t m = sf.size() - 1;
    if (m == 0) return {};
    // reciprocal roots are eigenvalues of the companion of x^m P(1/x) / P(0)
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<long>(m), static_cast<long>(m));
    for (size_t i = 0; i + 1 < m; ++i) C(static_cast<long>(i) + 1, static_cast<long>(i)) = 1.0;
    for (size_t i = 0; i < m; ++i)
        C(static_cast<long>(i), static_cast<long>(m) - 1) =
            -(sf[m - i] / sf[0]).convert_to<double>();
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    std::vector<std::complex<double>> out;
    for (long i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

}  // namespace detail

struct VerifyReport {
    int weight = 0;
    bool moduli_ok = false;              // every |omega| = p^(weight/2) within tol
    double max_modulus_error = 0.0;      // relative
    bool functional_equation_ok = false; // root multiset closed under w -> p^weight / w
    bool newton_symmetric = false;       // slope multiset closed under s -> weight - s
    std::vector<NewtonSlope> slopes;

    bool all_ok() const { return moduli_ok && functional_equation_ok && newton_symmetric; }
};

inline VerifyReport verify_report(const ZetaData& z, double tol = 1e-6) {
    if (z.numerator.size() < 2) throw contract_error("verify_report: numerator degree >= 1 required");
    if (z.numerator[0] != 1) throw contract_error("verify_report: numerator constant term must be 1");
    VerifyReport r;
    int w = z.weight();
    r.weight = w;
    long p = z.p;
    int k = static_cast<int>(z.numerator.size()) - 1;
    const auto& c = z.numerator;

    // (i) complex reciprocal roots of the square-free part
    auto sf = detail::square_free_part(c);
    double target = std::pow(static_cast<double>(p), w / 2.0);
    r.moduli_ok = true;
    for (auto& root : detail::reciprocal_roots(sf)) {
        double err = std::abs(std::abs(root) - target) / target;
        r.max_modulus_error = std::max(r.max_modulus_error, err);
        if (err > tol) r.moduli_ok = false;
    }

    // (ii) multiset invariance under omega -> p^w / omega is equivalent to the
    // exact coefficient identity c_k * c_{k-i} = c_i * p^(w(k-i)); checked with
    // integers so multiplicities are handled exactly.
    r.functional_equation_ok = c[k] * c[k] == pow_big(pow_big(p, w), k);
    if (r.functional_equation_ok)
        for (int i = 0; i <= k; ++i)
            if (c[k] * c[k - i] != c[i] * pow_big(pow_big(p, w), k - i)) {
                r.functional_equation_ok = false;
                break;
            }

    // (iii) Newton polygon of the numerator, slopes s vs weight - s
    std::vector<std::pair<long, Rational>> pts;
    for (int i = 0; i <= k; ++i)
        if (c[i] != 0) pts.emplace_back(i, Rational(ord_p_int(c[i], p)));
    auto np = newton_polygon(pts);
    r.slopes = np.slopes;
    std::multiset<std::pair<Rational, long>> have, mirrored;
    for (auto& s : np.slopes) {
        have.emplace(s.slope, s.length);
        mirrored.emplace(Rational(w) - s.slope, s.length);
    }
    r.newton_symmetric = have == mirrored;
    return r;
}

}  // namespace dwork

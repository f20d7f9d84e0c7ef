#pragma once

// The quartic Dwork family x1^4+x2^4+x3^4+x4^4 - 4*Gamma*x1x2x3x4 over F_p,
// p = 1 mod 4, Gamma^4 != 1. The deformation matrix U(Teich(Gamma)) is block
// diagonal over the 21-element interior basis, and 19 of the reciprocal
// roots come out in closed form as Legendre symbols times p. The remaining
// quadratic factor is pinned down by one oracle count plus the functional
// equation. Exact-rational Picard-Fuchs checks validate the connection
// matrices the closed forms came from.

#include "oracle.hpp"
#include "padic.hpp"
#include "series.hpp"
#include "zeta.hpp"

#include <array>

namespace dwork {

inline FpPolynomial dwork_quartic(long p, long gamma) {
    long c = ((-4 * gamma) % p + p) % p;
    std::string text = "x1^4+x2^4+x3^4+x4^4";
    if (c != 0) text += "+" + std::to_string(c) + "*x1*x2*x3*x4";
    return parse_polynomial(text, p, 4);
}

// The 21 reciprocal roots: a 12-fold root, three pairs from the symmetric
// 2x2 blocks, a 19th root from the 3x3 determinant, and the residual
// quadratic 1 - aT + p^2 T^2 once a is known.
struct BlockFactors {
    BigInt u5_root;                                 // multiplicity 12
    std::array<std::array<BigInt, 2>, 3> pair_roots;
    BigInt root19;
    std::optional<BigInt> residual_a;
};

inline BlockFactors block_factors(long p, long gamma) {
    if (!is_prime_small(p) || p % 4 != 1)
        throw contract_error("block_factors: p must be a prime with p = 1 mod 4");
    long g = ((gamma % p) + p) % p;
    if (g == 0) throw contract_error("block_factors: Gamma = 0 is the diagonal case");
    if (mod_pow(BigInt(g), 4, BigInt(p)) == 1)
        throw singular_error("block_factors: Gamma^4 = 1 makes [1:Gamma:Gamma:Gamma] singular");
    long g2 = static_cast<long>((BigInt(g) * g % p).convert_to<long>());
    long g4 = static_cast<long>((BigInt(g2) * g2 % p).convert_to<long>());
    int l4 = legendre_symbol(BigInt(1 - g4), p);
    int h_plus = legendre_symbol(BigInt(1 - g2), p);   // h(mu^2)
    int h_minus = legendre_symbol(BigInt(1 + g2), p);  // h(-mu^2)
    BlockFactors bf;
    int sign = ((p - 1) / 4) % 2 == 0 ? 1 : -1;  // (-1)^((p-1)/4)
    bf.u5_root = BigInt(sign * l4) * p;
    // each 2x2 block (p^2/2)[[h+ + h-, h+ - h-],[h+ - h-, h+ + h-]] has
    // eigenvalues p^2 h+ and p^2 h-
    for (auto& pr : bf.pair_roots) pr = {BigInt(h_plus) * p, BigInt(h_minus) * p};
    bf.root19 = BigInt(l4) * p;
    return bf;
}

// Z = 1/((1-T)(1-pT)(1-p^2 T) P(T)) for this surface, so the sum of all 21
// reciprocal roots of P is N_1 - (1 + p + p^2); subtracting the 19 closed
// forms leaves a, the linear coefficient of the residual 1 - aT + p^2 T^2.
inline BigInt residual_quadratic(long p, const BlockFactors& bf, const BigInt& n1) {
    BigInt known = 12 * bf.u5_root + bf.root19;
    for (auto& pr : bf.pair_roots) known += pr[0] + pr[1];
    BigInt a = n1 - (1 + BigInt(p) + BigInt(p) * p) - known;
    if (abs(a) > 2 * p)
        throw precision_error("residual_quadratic: |a| exceeds the Weil bound 2p");
    return a;
}

inline ZetaData assemble_P(long p, long gamma, const BigInt& n1) {
    auto bf = block_factors(p, gamma);
    BigInt a = residual_quadratic(p, bf, n1);
    bf.residual_a = a;

    std::vector<BigInt> poly{BigInt(1)};
    auto mul_root = [&](const BigInt& r) {  // poly *= (1 - rT)
        poly.push_back(BigInt(0));
        for (size_t k = poly.size() - 1; k > 0; --k) poly[k] -= r * poly[k - 1];
    };
    for (int i = 0; i < 12; ++i) mul_root(bf.u5_root);
    for (auto& pr : bf.pair_roots) { mul_root(pr[0]); mul_root(pr[1]); }
    mul_root(bf.root19);
    // poly *= 1 - aT + p^2 T^2
    std::vector<BigInt> out(poly.size() + 2, BigInt(0));
    for (size_t k = 0; k < poly.size(); ++k) {
        out[k] += poly[k];
        out[k + 1] -= a * poly[k];
        out[k + 2] += BigInt(p) * p * poly[k];
    }

    ZetaData z;
    z.p = p;
    z.n = 4;
    z.d = 4;
    z.gamma = ((gamma % p) + p) % p;
    z.method = "deformation";
    z.numerator = std::move(out);
    z.numerator_is_inverted = true;
    z.denominator_factors = {{1, 0}, {1, 1}, {1, 2}};
    z.counts.emplace_back(1, n1);
    if (zeta_count(z, 1) != n1)
        throw precision_error("assemble_P: assembled P fails to reproduce N_1");
    return z;
}

// Convenience entry point: pulls N_1 from the oracle, assembles P, and
// optionally cross-checks N_2 over F_(p^2).
inline ZetaData deformation_zeta(long p, long gamma, bool check_n2 = true, int threads = 1) {
    auto f = dwork_quartic(p, gamma);
    BigInt n1 = count_projective(f, ff_build(p, 1));
    ZetaData z = assemble_P(p, gamma, n1);
    z.checks["oracle_n1"] = true;
    if (check_n2) {
        BigInt n2 = count_projective(f, ff_build(p, 2), threads);
        if (zeta_count(z, 2) != n2)
            throw precision_error("deformation_zeta: predicted N_2 disagrees with the oracle");
        z.counts.emplace_back(2, n2);
        z.checks["oracle_n2"] = true;
    }
    return z;
}

// ---- Picard-Fuchs consistency checks (exact rationals) ----

struct PFReport {
    bool c_block_ok = false;        // c = (1-L^4)^(-1/2) solves c' = 2L^3/(1-L^4) c
    bool two_by_two_ok = false;     // closed-form C_i solves its 2x2 system, C_i(0) = I
    bool det_ok = false;            // solved 3x3 system has det (D C_1) = -(1/64)(1-L^4)^(-3/2)
    int first_failure_degree = -1;

    bool all_ok() const { return c_block_ok && two_by_two_ok && det_ok; }
};

namespace detail {

using RS = TruncSeries<Rational>;

inline RS one_plus_power(int k, const Rational& coeff, const Rational& e, int M) {
    std::vector<Rational> u(M + 1, Rational(0));
    if (k <= M) u[k] = coeff;
    return binomial_power(RS(u), e);
}

inline RS monomial(int k, const Rational& coeff, int M) {
    std::vector<Rational> u(M + 1, Rational(0));
    u[k] = coeff;
    return RS(u);
}

inline int first_nonzero(const RS& s) {
    for (int i = 0; i <= s.degree(); ++i)
        if (s[i] != 0) return i;
    return -1;
}

}  // namespace detail

inline PFReport picard_fuchs_check(int M_deg = 40) {
    using detail::RS;
    PFReport rep;
    int M = M_deg;
    auto fail_at = [&](const RS& residual) {
        int d = detail::first_nonzero(residual);
        if (rep.first_failure_degree < 0 || (d >= 0 && d < rep.first_failure_degree))
            rep.first_failure_degree = d;
    };

    RS one_m_l4 = detail::one_plus_power(4, Rational(-1), Rational(1), M);
    RS zero = detail::monomial(0, Rational(0), M - 4);

    // (i) the 12-fold 1x1 block
    RS c = detail::one_plus_power(4, Rational(-1), Rational(-1, 2), M);
    RS res1 = (one_m_l4 * c.derivative() - detail::monomial(3, Rational(2), M) * c).truncated(M - 4);
    rep.c_block_ok = res1 == zero;
    if (!rep.c_block_ok) fail_at(res1);

    // (ii) the three 2x2 blocks: C = (a/2) [[1,1],[1,1]] + (b/2) [[1,-1],[-1,1]]
    {
        RS a = detail::one_plus_power(2, Rational(-1), Rational(-1, 2), M);
        RS b = detail::one_plus_power(2, Rational(1), Rational(-1, 2), M);
        RS half = detail::monomial(0, Rational(1, 2), M);
        RS c11 = half * (a + b), c12 = half * (a - b);
        RS l3 = detail::monomial(3, Rational(1), M);
        RS l1 = detail::monomial(1, Rational(1), M);
        RS r11 = (one_m_l4 * c11.derivative() - (c11 * l3 + c12 * l1)).truncated(M - 4);
        RS r12 = (one_m_l4 * c12.derivative() - (c11 * l1 + c12 * l3)).truncated(M - 4);
        rep.two_by_two_ok = r11 == zero && r12 == zero && c11[0] == 1 && c12[0] == 0;
        if (!rep.two_by_two_ok) { fail_at(r11); fail_at(r12); }
    }

    // (iii) the 3x3 block: solve (1 - L^4) C' = C A coefficientwise with
    // C(0) = I, where A = (1 - L^4) B from the displayed system.
    {
        using Mat = std::array<std::array<Rational, 3>, 3>;
        auto zero_mat = [] { Mat m{}; for (auto& r : m) r.fill(Rational(0)); return m; };
        std::array<Mat, 5> A;
        A.fill(zero_mat());
        A[0][1][0] = -4;
        A[0][2][1] = -4;
        A[1][0][2] = Rational(1, 16);
        A[2][1][2] = Rational(-7, 4);
        A[3][2][2] = 6;
        A[4][1][0] = 4;
        A[4][2][1] = 4;
        std::vector<Mat> C(M + 1, zero_mat());
        for (int i = 0; i < 3; ++i) C[0][i][i] = 1;
        for (int m = 0; m < M; ++m) {
            Mat rhs = zero_mat();  // coefficient of L^m in C A
            for (int k = std::max(0, m - 4); k <= m; ++k)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        for (int l = 0; l < 3; ++l)
                            rhs[i][j] += C[k][i][l] * A[m - k][l][j];
            // (m+1) c_{m+1} - (m-3) c_{m-3} = rhs
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    Rational v = rhs[i][j];
                    if (m - 3 >= 0) v += Rational(m - 3) * C[m - 3][i][j];
                    C[m + 1][i][j] = v / (m + 1);
                }
        }
        // det of the row-rescaled solution D C, D = diag(1, -1/4, 1/16): the
        // printed determinant belongs to that normalization of the periods
        std::array<Rational, 3> D = {Rational(1), Rational(-1, 4), Rational(1, 16)};
        auto entry = [&](int i, int j) {
            std::vector<Rational> coeffs(M + 1);
            for (int m = 0; m <= M; ++m) coeffs[m] = D[i] * C[m][i][j];
            return RS(std::move(coeffs));
        };
        RS det = entry(0, 0) * (entry(1, 1) * entry(2, 2) - entry(1, 2) * entry(2, 1)) -
                 entry(0, 1) * (entry(1, 0) * entry(2, 2) - entry(1, 2) * entry(2, 0)) +
                 entry(0, 2) * (entry(1, 0) * entry(2, 1) - entry(1, 1) * entry(2, 0));
        RS target = detail::monomial(0, Rational(-1, 64), M) *
                    detail::one_plus_power(4, Rational(-1), Rational(-3, 2), M);
        RS rdet = (det - target).truncated(M - 4);
        rep.det_ok = rdet == zero;
        if (!rep.det_ok) fail_at(rdet);
    }

    return rep;
}

}  // namespace dwork

#pragma once

// Closed-form zeta numerators for diagonal hypersurfaces: the interior
// monomial basis of H_0, Gamma_p eigenvalues of U(0) for the Fermat quartic
// (p = 1 mod 4), and the two-element swap block of diagonal cubics
// (p = 2 mod 3). Every result is gated on an exact oracle count.

#include "fredholm.hpp"
#include "oracle.hpp"
#include "splitting.hpp"
#include "zeta.hpp"

namespace dwork {

// Interior tuples 0 < v_i < d with d | sum, v0 = sum / d.
inline std::vector<MonomialIndex> h0_basis(int n, int d) {
    if (n < 1 || d < 2) throw contract_error("h0_basis: need n >= 1, d >= 2");
    std::vector<MonomialIndex> out;
    std::vector<int> v(n + 1, 0);
    auto rec = [&](auto&& self, int pos, int sum) -> void {
        if (pos > n) {
            if (sum % d == 0) {
                v[0] = sum / d;
                out.push_back(MonomialIndex{v});
            }
            return;
        }
        for (int x = 1; x < d; ++x) {
            v[pos] = x;
            self(self, pos + 1, sum + x);
        }
    };
    rec(rec, 1, 0);
    std::sort(out.begin(), out.end());
    return out;
}

inline BigInt h0_size_formula(int n, int d) {
    BigInt t = pow_big(d - 1, n);
    t += (n % 2 == 0) ? BigInt(d - 1) : BigInt(-(d - 1));
    return t / d;
}

namespace detail {

// Gamma_p(v/4) for p = 1 mod 4 via the Pochhammer expansion with z = v/4,
// a = v(p-1)/4 (so that pz - a = v/4).
inline PadicInt gamma_quarter(int v, long p, int prec, const SplittingCoeffs& sc, int K) {
    PadicInt z = PadicInt::from_rational(Rational(v, 4), p, prec);
    long a = v * (p - 1) / 4;
    return gamma_p_roberts(z, a, sc, K);
}

inline std::vector<BigInt> binom_row(int n) {
    std::vector<BigInt> row(n + 1, BigInt(1));
    for (int k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
    return row;
}

}  // namespace detail

// Pochhammer terms needed for Gamma_p at working precision N. Term k is
// c_{a+kp} p^k (z)_k, and the splitting-coefficient bound
// ord(c_n) >= ((p-1)/p^2 - 1/(p-1)) n gives order >= k (p^2-3p+1)/(p(p-1))
// up to a bounded offset in a.
inline int gamma_terms_for(long p, int prec) {
    return static_cast<int>(static_cast<long>(prec) * p * (p - 1) / (p * p - 3 * p + 1)) + 2;
}

// Working precision for exact recovery of the degree-21 numerator: the
// centered lift of coefficient k is exact once p^N > 2 C(21,10) p^10.
inline int quartic_precision(long p) {
    BigInt bound = 2 * detail::binom_row(21)[10] * pow_big(p, 10);
    int N = 1;
    BigInt pn = p;
    while (pn <= bound) { pn *= p; ++N; }
    return N + 1;
}

// Degree-21 numerator of the Fermat quartic surface x1^4+...+x4^4 = 0 over
// F_p, p = 1 mod 4. Each basis monomial Y^v is a U(0) eigenvector with
// eigenvalue (-p)^(v0) prod Gamma_p(v_i/4); the reciprocal roots are those
// eigenvalues over p. Coefficients are centered-lifted to exact integers and
// the predicted N_1 is checked against the brute-force oracle.
inline ZetaData fermat_quartic_P(long p, int prec = -1) {
    if (!is_prime_small(p) || p % 4 != 1)
        throw contract_error("fermat_quartic_P: p must be a prime with p = 1 mod 4");
    if (prec < 0) prec = quartic_precision(p);
    int K = gamma_terms_for(p, prec);
    long a_max = 3 * (p - 1) / 4;
    SplittingCoeffs sc(p, static_cast<int>(a_max + static_cast<long>(K) * p));

    std::array<PadicInt, 4> gam = {PadicInt(0, p, prec), PadicInt(0, p, prec),
                                   PadicInt(0, p, prec), PadicInt(0, p, prec)};
    for (int v = 1; v <= 3; ++v) gam[v] = detail::gamma_quarter(v, p, prec, sc, K);

    auto basis = h0_basis(4, 4);
    std::vector<PadicInt> poly{PadicInt(1, p, prec)};  // prod (1 - omega_v T)
    for (auto& m : basis) {
        // omega_v = (-1)^(v0) p^(v0 - 1) prod Gamma_p(v_i/4)
        PadicInt omega = PadicInt(pow_big(p, m.v0() - 1), p, prec);
        for (int i = 1; i <= 4; ++i) omega *= gam[m.v[i]];
        if (m.v0() % 2 != 0) omega = -omega;
        poly.push_back(PadicInt(0, p, prec));
        for (size_t k = poly.size() - 1; k > 0; --k) poly[k] -= omega * poly[k - 1];
    }

    auto binom = detail::binom_row(21);
    ZetaData z;
    z.p = p;
    z.n = 4;
    z.d = 4;
    z.method = "diagonal-gamma";
    z.numerator_is_inverted = true;
    z.denominator_factors = {{1, 0}, {1, 1}, {1, 2}};
    // Lift the lower half; |c_k| <= C(21,k) p^k keeps k <= 10 inside the
    // centered window at this precision, but the bound keeps growing with k,
    // so the top half comes from the functional equation instead: the basis
    // pairing v <-> 4-v (fixed point (2,2,2,2) with root p) forces
    // prod omega = p^21, hence c_{21-i} = -c_i p^(21-2i).
    std::vector<BigInt> c(22);
    for (int k = 0; k <= 10; ++k) {
        c[k] = poly[k].centered_lift();
        if (abs(c[k]) > binom[k] * pow_big(p, k))
            throw precision_error("fermat_quartic_P: coefficient " + std::to_string(k) +
                                  " violates the Weil bound");
    }
    for (int i = 0; i <= 10; ++i) c[21 - i] = -c[i] * pow_big(p, 21 - 2 * i);
    // the completed top half must agree with the computed product mod p^N
    for (int k = 11; k <= 21; ++k)
        if (!(PadicInt(c[k], p, prec) == poly[k]))
            throw precision_error("fermat_quartic_P: functional equation disagrees with the "
                                  "eigenvalue product at degree " + std::to_string(k));
    z.numerator = std::move(c);

    BigInt n1_pred = zeta_count(z, 1);
    BigInt n1 = count_projective(parse_polynomial("x1^4+x2^4+x3^4+x4^4", p), ff_build(p, 1));
    if (n1_pred != n1)
        throw precision_error("fermat_quartic_P: predicted N_1 disagrees with the oracle");
    z.counts.emplace_back(1, n1);
    z.checks["oracle_n1"] = true;
    return z;
}

// Numerator 1 + alpha T^2 of a smooth diagonal cubic curve a1 x1^3 + a2 x2^3
// + a3 x3^3 over F_p, p = 2 mod 3. U swaps the two basis monomials (1,1,1)
// and (2,2,2) with transition coefficients p^2 Gamma_p(1/3)^3 and
// -p Gamma_p(2/3)^3, giving alpha = p (Gamma_p(1/3) Gamma_p(2/3))^3. The
// coefficients a_i drop out (cubing is a bijection on F_p); the oracle gate
// runs on the actual a_i to confirm.
inline ZetaData cubic_swap_P(long p, long a1, long a2, long a3, int prec = 6) {
    if (!is_prime_small(p) || p % 3 != 2 || p == 2)
        throw contract_error("cubic_swap_P: p must be an odd prime with p = 2 mod 3");
    if (a1 % p == 0 || a2 % p == 0 || a3 % p == 0)
        throw singular_error("cubic_swap_P: zero coefficient gives a singular cubic");
    int K = gamma_terms_for(p, prec);
    SplittingCoeffs sc(p, static_cast<int>(p - 1 + static_cast<long>(K) * p));
    // Gamma_p(1/3) = Gamma_p(p(2/3) - (2p-1)/3), Gamma_p(2/3) = Gamma_p(p(1/3) - (p-2)/3)
    PadicInt g13 = gamma_p_roberts(PadicInt::from_rational(Rational(2, 3), p, prec),
                                   (2 * p - 1) / 3, sc, K);
    PadicInt g23 = gamma_p_roberts(PadicInt::from_rational(Rational(1, 3), p, prec),
                                   (p - 2) / 3, sc, K);
    PadicInt prod = g13 * g23;
    PadicInt alpha_p = PadicInt(p, p, prec) * prod * prod * prod;
    BigInt alpha = alpha_p.centered_lift();
    // both reciprocal roots have |omega| = sqrt(p), so alpha = +-p exactly
    if (abs(alpha) != p)
        throw precision_error("cubic_swap_P: alpha fails the Weil bound |alpha| = p");

    ZetaData z;
    z.p = p;
    z.n = 3;
    z.d = 3;
    z.method = "diagonal-swap";
    z.numerator = {BigInt(1), BigInt(0), alpha};
    z.denominator_factors = {{1, 0}, {1, 1}};

    long r1 = ((a1 % p) + p) % p, r2 = ((a2 % p) + p) % p, r3 = ((a3 % p) + p) % p;
    std::string f_text = std::to_string(r1) + "*x1^3+" + std::to_string(r2) + "*x2^3+" +
                         std::to_string(r3) + "*x3^3";
    auto f = parse_polynomial(f_text, p);
    BigInt n1 = count_projective(f, ff_build(p, 1));
    BigInt n2 = count_projective(f, ff_build(p, 2));
    if (zeta_count(z, 1) != n1 || zeta_count(z, 2) != n2)
        throw precision_error("cubic_swap_P: predicted counts disagree with the oracle");
    z.counts = {{1, n1}, {2, n2}};
    z.checks["oracle_n1"] = true;
    z.checks["oracle_n2"] = true;
    return z;
}

}  // namespace dwork

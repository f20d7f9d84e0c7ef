#pragma once

// Coefficients of the splitting function J(x) = exp(pi(x - x^p)), the p-adic
// gamma function by two independent routes, and the additive character built
// from J at Teichmuller points.

#include "core.hpp"
#include "padic.hpp"
#include "series.hpp"

#include <limits>

namespace dwork {

// J(x) = sum_n c_n (pi x)^n with the c_n exact rationals. Since
// pi(x - x^p) = u + u^p/p in u = pi x, the coefficients satisfy
// (n+1) c_{n+1} = c_n + c_{n-p+1} and are computed by that recurrence.
// The c_n are kept as exact rationals: they are not p-integral for
// n >= p^2, and exact values give exact lambda-valuations
// (lambda_n = c_n pi^n).
class SplittingCoeffs {
  public:
    SplittingCoeffs(long p, int n_max) : p_(p) {
        if (p < 3 || !is_prime_small(p)) throw contract_error("SplittingCoeffs: p must be an odd prime");
        if (n_max < 1) throw contract_error("SplittingCoeffs: n_max >= 1 required");
        c_.assign(n_max + 1, Rational(0));
        c_[0] = 1;
        for (int n = 0; n < n_max; ++n) {
            Rational acc = c_[n];
            if (n - p + 1 >= 0) acc += c_[n - p + 1];
            c_[n + 1] = acc / (n + 1);
        }
    }

    long prime() const { return p_; }
    int max_index() const { return static_cast<int>(c_.size()) - 1; }

    const Rational& c(int n) const {
        if (n < 0 || n > max_index())
            throw contract_error("SplittingCoeffs: index beyond truncation");
        return c_[n];
    }

    // Exact ord_p(lambda_n) = ord_p(c_n) + n/(p-1); lambda_n != 0 expected.
    Rational lambda_order(int n) const {
        return ord_p(c(n), p_) + Rational(n, p_ - 1);
    }

    // Scalar t with lambda_n = t * pi^(n mod (p-1)), i.e.
    // t = c_n * (-p)^floor(n/(p-1)). Always p-integral.
    PadicInt lambda_unit(int n, int prec) const {
        Rational t = c(n);
        long q = n / (p_ - 1);
        for (long i = 0; i < q; ++i) t *= -p_;
        return PadicInt::from_rational(t, p_, prec);
    }

    PiElem lambda(int n, int prec) const {
        PiElem out(p_, prec);
        out.set_coeff(n % (p_ - 1), lambda_unit(n, prec));
        return out;
    }

  private:
    long p_;
    std::vector<Rational> c_;
};

namespace detail {
// Product of f(j) over j in [1, m) with p not dividing j, mod p^prec.
inline BigInt morita_product(const BigInt& m, long p, const BigInt& modulus) {
    if (modulus <= BigInt(std::numeric_limits<std::uint64_t>::max() >> 1) &&
        m <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
        std::uint64_t mod = modulus.convert_to<std::uint64_t>();
        std::uint64_t mm = m.convert_to<std::uint64_t>();
        unsigned __int128 acc = 1;
        std::uint64_t j_mod_p = 0;
        std::uint64_t prod = 1;
        for (std::uint64_t j = 1; j < mm; ++j) {
            if (++j_mod_p == static_cast<std::uint64_t>(p)) { j_mod_p = 0; continue; }
            acc = static_cast<unsigned __int128>(prod) * (j % mod);
            prod = static_cast<std::uint64_t>(acc % mod);
        }
        return BigInt(prod);
    }
    BigInt prod = 1;
    for (BigInt j = 1; j < m; ++j) {
        if (j % p == 0) continue;
        prod = prod * j % modulus;
    }
    return prod;
}
}  // namespace detail

// Morita's Gamma_p(m) = (-1)^m prod_{0 < j < m, p not| j} j, for integer m >= 0.
inline PadicInt gamma_p_product(const BigInt& m, long p, int prec) {
    if (m < 0) throw contract_error("gamma_p_product: m must be nonnegative");
    BigInt modulus = pow_big(p, prec);
    if (m >= modulus) throw contract_error("gamma_p_product: m must be < p^N");
    if (m > 100000000) throw contract_error("gamma_p_product: argument beyond cost cap");
    BigInt prod = detail::morita_product(m, p, modulus);
    if (m % 2 != 0) prod = modulus - prod;
    return PadicInt(prod, p, prec);
}

// Gamma_p extended to z in Z_p, evaluated at the nonnegative residue of z
// mod p^N (Gamma_p is Lipschitz, so this is exact at precision N).
inline PadicInt gamma_p_at(const PadicInt& z) {
    return gamma_p_product(z.residue(), z.prime(), z.precision());
}

// Roberts' expansion Gamma_p(pz - a) = sum_k c_{a+kp} p^k (z)_k, truncated at
// k = K_terms (default N + 2). Term k has p-adic order growing like
// k(p-2)/p, so callers needing full precision N should pass
// K_terms >= N*p/(p-2) + 2.
inline PadicInt gamma_p_roberts(const PadicInt& z, long a, const SplittingCoeffs& sc,
                                int K_terms = -1) {
    long p = z.prime();
    int prec = z.precision();
    if (sc.prime() != p) throw contract_error("gamma_p_roberts: prime mismatch");
    if (a < 0 || a >= p) throw contract_error("gamma_p_roberts: need 0 <= a < p");
    if (K_terms < 0) K_terms = prec + 2;
    if (sc.max_index() < a + static_cast<long>(K_terms) * p)
        throw contract_error("gamma_p_roberts: splitting coefficients too short");
    PadicInt sum(0, p, prec);
    PadicInt poch(1, p, prec);  // (z)_k
    Rational ppow(1);
    for (int k = 0; k <= K_terms; ++k) {
        if (k > 0) {
            poch *= z + PadicInt(k - 1, p, prec);
            ppow *= p;
        }
        sum += PadicInt::from_rational(sc.c(a + k * p) * ppow, p, prec) * poch;
    }
    return sum;
}

// Number of splitting coefficients needed so the character tail is below p^prec.
inline int character_truncation(long p, int prec) {
    // tail term n has order >= n(p-1)/p^2
    return static_cast<int>((static_cast<long>(prec) * p * p) / (p - 1)) + p;
}

// Theta_p(x) = J(Teich(x)): additive character F_p -> mu_p, as a PiElem.
inline PiElem dwork_character(const BigInt& x, const SplittingCoeffs& sc, int prec) {
    long p = sc.prime();
    if (sc.max_index() < character_truncation(p, prec))
        throw contract_error("dwork_character: splitting coefficients too short");
    PiElem out(p, prec);
    PadicInt t = teichmuller(x, p, prec);
    PadicInt tpow(1, p, prec);
    for (int n = 0; n <= sc.max_index(); ++n) {
        if (n > 0) tpow *= t;
        if (sc.c(n) == 0) continue;
        out.set_coeff(n % (p - 1), out.coeff(n % (p - 1)) + sc.lambda_unit(n, prec) * tpow);
    }
    return out;
}

}  // namespace dwork

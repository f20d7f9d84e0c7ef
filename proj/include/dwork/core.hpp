#pragma once

// Shared scalar types and small number-theoretic helpers.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwork {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Contract violations (mismatched moduli, bad arguments).
struct contract_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Results that cannot be certified at the working precision/truncation.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Singular hypersurface requested where smoothness is required.
struct singular_error : std::domain_error {
    using std::domain_error::domain_error;
};

inline BigInt pow_big(const BigInt& base, unsigned long e) {
    return boost::multiprecision::pow(base, e);
}

inline BigInt mod_pos(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline BigInt mod_pow(BigInt base, BigInt e, const BigInt& m) {
    return boost::multiprecision::powm(mod_pos(base, m), e, m);
}

// Inverse of a mod m for gcd(a, m) = 1.
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt r0 = m, r1 = mod_pos(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        BigInt s2 = s0 - q * s1;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw contract_error("mod_inverse: argument not invertible");
    return mod_pos(s0, m);
}

// Exact p-adic order of a nonzero integer.
inline long ord_p_int(BigInt a, long p) {
    if (a == 0) throw contract_error("ord_p_int: zero has no finite order");
    long v = 0;
    while (a % p == 0) { a /= p; ++v; }
    return v;
}

// Exact p-adic order of a nonzero rational.
inline Rational ord_p(const Rational& r, long p) {
    if (r == 0) throw contract_error("ord_p: zero has no finite order");
    return Rational(ord_p_int(boost::multiprecision::numerator(r), p) -
                    ord_p_int(boost::multiprecision::denominator(r), p));
}

// Mobius function values mu(0..n) via a linear sieve.
inline std::vector<int> mobius_table(int n) {
    std::vector<int> mu(n + 1, 0);
    if (n >= 1) mu[1] = 1;
    std::vector<int> primes;
    std::vector<char> comp(n + 1, 0);
    for (int i = 2; i <= n; ++i) {
        if (!comp[i]) { primes.push_back(i); mu[i] = -1; }
        for (int q : primes) {
            long long ip = 1LL * i * q;
            if (ip > n) break;
            comp[ip] = 1;
            if (i % q == 0) { mu[ip] = 0; break; }
            mu[ip] = -mu[i];
        }
    }
    return mu;
}

inline bool is_prime_small(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace dwork

#pragma once

// Fixed-precision arithmetic in Z/p^N, the ramified ring Z_p[pi] with
// pi^(p-1) = -p, valuations, Teichmuller lifts, Legendre symbols.
//
// Absolute-precision model: every scalar carries one (p, N); binary
// operations require both operands to match.

#include "core.hpp"

#include <optional>

namespace dwork {

// Valuation of a truncated quantity. at_least is set when the value is
// only a lower bound (exact zero residue at precision N).
struct Valuation {
    Rational value;
    bool at_least = false;

    bool operator==(const Valuation&) const = default;
};

class PadicInt {
  public:
    PadicInt() = default;

    PadicInt(BigInt value, long p, int prec)
        : p_(p), prec_(prec), modulus_(pow_big(p, prec)) {
        if (p < 3 || prec < 1) throw contract_error("PadicInt: need odd prime p and N >= 1");
        residue_ = mod_pos(value, modulus_);
    }

    // r must be p-integral: ord_p(r) >= 0.
    static PadicInt from_rational(const Rational& r, long p, int prec) {
        BigInt num = boost::multiprecision::numerator(r);
        BigInt den = boost::multiprecision::denominator(r);
        long vnum = 0, vden = 0;
        if (num != 0) {
            while (num % p == 0) { num /= p; ++vnum; }
            while (den % p == 0) { den /= p; ++vden; }
        }
        if (vden > vnum)
            throw contract_error("PadicInt::from_rational: rational is not p-integral");
        PadicInt out(0, p, prec);
        if (r != 0) {
            BigInt unit = mod_pos(num, out.modulus_) * mod_inverse(den, out.modulus_) % out.modulus_;
            out.residue_ = unit * pow_big(p, static_cast<unsigned long>(vnum - vden)) % out.modulus_;
        }
        return out;
    }

    const BigInt& residue() const { return residue_; }
    long prime() const { return p_; }
    int precision() const { return prec_; }
    const BigInt& modulus() const { return modulus_; }
    bool is_zero() const { return residue_ == 0; }

    PadicInt operator+(const PadicInt& o) const {
        check_match(o);
        return with_residue(residue_ + o.residue_);
    }
    PadicInt operator-(const PadicInt& o) const {
        check_match(o);
        return with_residue(residue_ - o.residue_ + modulus_);
    }
    PadicInt operator*(const PadicInt& o) const {
        check_match(o);
        return with_residue(residue_ * o.residue_);
    }
    PadicInt operator-() const { return with_residue(modulus_ - residue_); }

    PadicInt& operator+=(const PadicInt& o) { return *this = *this + o; }
    PadicInt& operator-=(const PadicInt& o) { return *this = *this - o; }
    PadicInt& operator*=(const PadicInt& o) { return *this = *this * o; }

    bool operator==(const PadicInt& o) const {
        return p_ == o.p_ && prec_ == o.prec_ && residue_ == o.residue_;
    }

    PadicInt pow(unsigned long e) const {
        return with_residue(mod_pow(residue_, BigInt(e), modulus_));
    }

    // Multiplicative inverse; requires a unit (residue not divisible by p).
    PadicInt inverse() const {
        if (residue_ % p_ == 0) throw contract_error("PadicInt::inverse: not a unit");
        return with_residue(mod_inverse(residue_, modulus_));
    }

    // Largest k <= N with p^k | residue; N flagged "at least" for residue 0.
    Valuation valuation() const {
        if (residue_ == 0) return {Rational(prec_), true};
        return {Rational(ord_p_int(residue_, p_)), false};
    }

    // Unique integer in (-p^N/2, p^N/2] congruent to the residue.
    BigInt centered_lift() const {
        if (2 * residue_ > modulus_) return residue_ - modulus_;
        return residue_;
    }

  private:
    PadicInt with_residue(BigInt r) const {
        PadicInt out = *this;
        out.residue_ = mod_pos(r, modulus_);
        return out;
    }
    void check_match(const PadicInt& o) const {
        if (p_ != o.p_ || prec_ != o.prec_)
            throw contract_error("PadicInt: mismatched (p, N)");
    }

    BigInt residue_ = 0;
    long p_ = 0;
    int prec_ = 0;
    BigInt modulus_ = 0;
};

// Element of Z_p[pi]/(pi^(p-1) + p) as coefficients of 1, pi, ..., pi^(p-2).
class PiElem {
  public:
    PiElem(long p, int prec) : p_(p), prec_(prec), coeffs_(p - 1, PadicInt(0, p, prec)) {}

    static PiElem from_padic(const PadicInt& a) {
        PiElem out(a.prime(), a.precision());
        out.coeffs_[0] = a;
        return out;
    }

    static PiElem pi(long p, int prec) { return pi_power(1, p, prec); }

    // pi^m reduced: pi^(p-1) = -p.
    static PiElem pi_power(long m, long p, int prec) {
        if (m < 0) throw contract_error("PiElem::pi_power: negative exponent");
        PiElem out(p, prec);
        long q = m / (p - 1), r = m % (p - 1);
        PadicInt scale(1, p, prec);
        PadicInt mp(-BigInt(p), p, prec);
        for (long i = 0; i < q; ++i) scale *= mp;
        out.coeffs_[r] = scale;
        return out;
    }

    long prime() const { return p_; }
    int precision() const { return prec_; }
    const PadicInt& coeff(int i) const { return coeffs_.at(i); }
    void set_coeff(int i, const PadicInt& v) { coeffs_.at(i) = v; }

    bool is_zero() const {
        for (auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    // True when only the pi^0 coefficient is nonzero.
    bool is_pi_free() const {
        for (size_t i = 1; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return false;
        return true;
    }

    PiElem operator+(const PiElem& o) const {
        check_match(o);
        PiElem out = *this;
        for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += o.coeffs_[i];
        return out;
    }
    PiElem operator-(const PiElem& o) const {
        check_match(o);
        PiElem out = *this;
        for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] -= o.coeffs_[i];
        return out;
    }
    PiElem operator*(const PiElem& o) const {
        check_match(o);
        PiElem out(p_, prec_);
        PadicInt mp(-BigInt(p_), p_, prec_);
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            for (size_t j = 0; j < coeffs_.size(); ++j) {
                if (o.coeffs_[j].is_zero()) continue;
                PadicInt t = coeffs_[i] * o.coeffs_[j];
                size_t k = i + j;
                if (k >= static_cast<size_t>(p_ - 1)) {
                    k -= p_ - 1;
                    t *= mp;
                }
                out.coeffs_[k] += t;
            }
        }
        return out;
    }

    PiElem& operator+=(const PiElem& o) { return *this = *this + o; }
    PiElem& operator-=(const PiElem& o) { return *this = *this - o; }
    PiElem& operator*=(const PiElem& o) { return *this = *this * o; }

    bool operator==(const PiElem& o) const {
        return p_ == o.p_ && prec_ == o.prec_ && coeffs_ == o.coeffs_;
    }

    // min over i of val(coeff_i) + i/(p-1), capped at N.
    Valuation valuation() const {
        Valuation best{Rational(prec_), true};
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            Valuation v = coeffs_[i].valuation();
            if (v.at_least) continue;
            Rational total = v.value + Rational(static_cast<long>(i), p_ - 1);
            if (best.at_least || total < best.value) best = {total, false};
        }
        if (!best.at_least && best.value > prec_) return {Rational(prec_), true};
        return best;
    }

  private:
    void check_match(const PiElem& o) const {
        if (p_ != o.p_ || prec_ != o.prec_)
            throw contract_error("PiElem: mismatched (p, N)");
    }

    long p_;
    int prec_;
    std::vector<PadicInt> coeffs_;
};

// Fixed point of x -> x^p mod p^N reducing to a mod p.
inline PadicInt teichmuller(BigInt a, long p, int prec) {
    BigInt mod = pow_big(p, prec);
    BigInt x = mod_pos(a, BigInt(p));
    for (int i = 0; i < prec; ++i) x = mod_pow(x, BigInt(p), mod);
    return PadicInt(x, p, prec);
}

// Euler's criterion.
inline int legendre_symbol(BigInt a, long p) {
    BigInt r = mod_pow(a, BigInt((p - 1) / 2), BigInt(p));
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

}  // namespace dwork

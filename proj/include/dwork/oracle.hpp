#pragma once

// Brute-force point counting over F_{p^s}: the independent ground truth for
// every p-adic result. Deliberately naive (no character sums, no lifting
// tricks); only the field arithmetic is table-driven.

#include "core.hpp"
#include "poly.hpp"

#include <thread>

namespace dwork {

// F_{p^s} as exp/log tables over a deterministic modulus: elements are codes
// in [0, q) whose base-p digits are the coefficients of the polynomial basis.
class FqTable {
  public:
    FqTable(long p, int s, std::uint64_t cap = 1ull << 26) : p_(p), s_(s) {
        if (p < 2 || !is_prime_small(p)) throw contract_error("FqTable: p must be prime");
        if (s < 1) throw contract_error("FqTable: s >= 1 required");
        std::uint64_t q = 1;
        for (int i = 0; i < s; ++i) {
            if (q > cap / static_cast<std::uint64_t>(p))
                throw contract_error("FqTable: p^s exceeds the memory cap; use a smaller field");
            q *= static_cast<std::uint64_t>(p);
        }
        q_ = q;
        modulus_ = least_irreducible();
        generator_ = least_generator();
        build_tables();
    }

    long p() const { return p_; }
    int s() const { return s_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t generator() const { return generator_; }
    const std::vector<long>& modulus_coeffs() const { return modulus_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t out = 0, place = 1;
        for (int i = 0; i < s_; ++i) {
            std::uint64_t d = a % p_ + b % p_;
            if (d >= static_cast<std::uint64_t>(p_)) d -= p_;
            out += d * place;
            place *= p_;
            a /= p_;
            b /= p_;
        }
        return out;
    }

    std::uint64_t neg(std::uint64_t a) const {
        std::uint64_t out = 0, place = 1;
        for (int i = 0; i < s_; ++i) {
            std::uint64_t d = a % p_;
            out += (d ? p_ - d : 0) * place;
            place *= p_;
            a /= p_;
        }
        return out;
    }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        return exp_[(log_[a] * (e % (q_ - 1))) % (q_ - 1)];
    }

    std::uint64_t exp_of(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
    std::uint64_t log_of(std::uint64_t a) const {
        if (a == 0) throw contract_error("FqTable: log of zero");
        return log_[a];
    }

    // Frobenius x -> x^p.
    std::uint64_t frobenius(std::uint64_t a) const { return pow(a, p_); }

  private:
    // mulmod in the polynomial basis, used only while bootstrapping tables.
    std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) const {
        std::vector<long> da(2 * s_, 0);
        std::vector<long> db(s_, 0);
        std::vector<long> acc(2 * s_, 0);
        for (int i = 0; i < s_; ++i) { db[i] = b % p_; b /= p_; }
        std::vector<long> va(s_, 0);
        for (int i = 0; i < s_; ++i) { va[i] = a % p_; a /= p_; }
        for (int i = 0; i < s_; ++i)
            for (int j = 0; j < s_; ++j) acc[i + j] = (acc[i + j] + va[i] * db[j]) % p_;
        // reduce by x^s = -(modulus tail)
        for (int k = 2 * s_ - 2; k >= s_; --k) {
            long c = acc[k];
            if (c == 0) continue;
            acc[k] = 0;
            for (int i = 0; i < s_; ++i)
                acc[k - s_ + i] = ((acc[k - s_ + i] - c * modulus_[i]) % p_ + p_ * p_) % p_;
        }
        std::uint64_t out = 0, place = 1;
        for (int i = 0; i < s_; ++i) { out += static_cast<std::uint64_t>(acc[i]) * place; place *= p_; }
        return out;
    }

    bool is_irreducible(const std::vector<long>& tail) const {
        // monic degree s with coefficient tail c_0..c_{s-1}; s <= 3 suffices
        // for the counting budget, where irreducible == no root in F_p.
        if (s_ == 1) return true;
        if (s_ > 3)
            throw contract_error("FqTable: extension degree beyond the counting budget (s <= 3)");
        for (long x = 0; x < p_; ++x) {
            long v = 1;  // leading term x^s
            for (int i = 0; i < s_; ++i) v = v * x % p_;
            long xp = 1;
            for (int i = 0; i < s_; ++i) {
                v = (v + tail[i] * xp) % p_;
                xp = xp * x % p_;
            }
            if (v % p_ == 0) return false;
        }
        return true;
    }

    std::vector<long> least_irreducible() const {
        // lexicographic in (c_0, c_1, ..., c_{s-1})
        std::uint64_t total = 1;
        for (int i = 0; i < s_; ++i) total *= static_cast<std::uint64_t>(p_);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<long> t(s_, 0);
            std::uint64_t cc = code;
            for (int i = s_ - 1; i >= 0; --i) { t[i] = static_cast<long>(cc % p_); cc /= p_; }
            if (is_irreducible(t)) return t;
        }
        throw precision_error("FqTable: no irreducible polynomial found");
    }

    std::uint64_t least_generator() {
        std::vector<std::uint64_t> prime_factors;
        std::uint64_t m = q_ - 1;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                prime_factors.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) prime_factors.push_back(m);
        for (std::uint64_t g = 2; g < q_; ++g) {
            bool ok = true;
            for (std::uint64_t r : prime_factors) {
                if (poly_pow(g, (q_ - 1) / r) == 1) { ok = false; break; }
            }
            if (ok && poly_pow(g, q_ - 1) == 1) return g;
        }
        throw precision_error("FqTable: no generator found");
    }

    std::uint64_t poly_pow(std::uint64_t base, std::uint64_t e) const {
        std::uint64_t out = 1;
        while (e) {
            if (e & 1) out = poly_mul(out, base);
            base = poly_mul(base, base);
            e >>= 1;
        }
        return out;
    }

    void build_tables() {
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        std::uint64_t x = 1;
        for (std::uint64_t k = 0; k < q_ - 1; ++k) {
            exp_[k] = x;
            log_[x] = k;
            x = poly_mul(x, generator_);
        }
        if (x != 1) throw precision_error("FqTable: generator order check failed");
    }

    long p_;
    int s_;
    std::uint64_t q_ = 0;
    std::vector<long> modulus_;  // tail coefficients c_0..c_{s-1} of monic modulus
    std::uint64_t generator_ = 0;
    std::vector<std::uint64_t> exp_, log_;
};

inline FqTable ff_build(long p, int s, std::uint64_t cap = 1ull << 26) { return FqTable(p, s, cap); }

namespace detail {

// Term of f compiled for log-space evaluation.
struct CompiledTerm {
    std::uint64_t coeff_log;
    std::vector<std::pair<int, int>> vars;  // (index, exponent), exponent > 0
};

inline std::vector<CompiledTerm> compile_terms(const FpPolynomial& f, const FqTable& t) {
    if (f.p != t.p()) throw contract_error("oracle: field/polynomial characteristic mismatch");
    std::vector<CompiledTerm> out;
    for (auto& term : f.terms) {
        if (term.coeff % f.p == 0) continue;
        CompiledTerm ct;
        ct.coeff_log = t.log_of(static_cast<std::uint64_t>(term.coeff));
        for (int i = 0; i < f.nvars; ++i)
            if (term.exps[i] > 0) ct.vars.emplace_back(i, term.exps[i]);
        out.push_back(std::move(ct));
    }
    return out;
}

inline std::uint64_t eval_terms(const std::vector<CompiledTerm>& terms,
                                const std::vector<std::uint64_t>& x, const FqTable& t) {
    std::uint64_t sum = 0;
    std::uint64_t order = t.q() - 1;
    for (auto& term : terms) {
        std::uint64_t lg = term.coeff_log;
        bool zero = false;
        for (auto& [i, e] : term.vars) {
            if (x[i] == 0) { zero = true; break; }
            lg += static_cast<std::uint64_t>(e) * t.log_of(x[i]);
        }
        if (zero) continue;
        sum = t.add(sum, t.exp_of(lg % order));
    }
    return sum;
}

// Iterate mixed-radix codes over `free` coordinates in [lo, hi), writing into
// x starting at position `start`; count zeros of f.
inline std::uint64_t count_range(const std::vector<CompiledTerm>& terms, const FqTable& t,
                                 std::vector<std::uint64_t> x, int start, int free,
                                 std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t hits = 0;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        std::uint64_t c = idx;
        for (int j = 0; j < free; ++j) {
            x[start + j] = c % t.q();
            c /= t.q();
        }
        if (eval_terms(terms, x, t) == 0) ++hits;
    }
    return hits;
}

inline std::uint64_t count_parallel(const std::vector<CompiledTerm>& terms, const FqTable& t,
                                    const std::vector<std::uint64_t>& x, int start, int free,
                                    std::uint64_t total, unsigned threads) {
    if (threads <= 1 || total < 1u << 16)
        return count_range(terms, t, x, start, free, 0, total);
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        std::uint64_t lo = total * w / threads;
        std::uint64_t hi = total * (w + 1) / threads;
        pool.emplace_back([&, w, lo, hi] {
            partial[w] = count_range(terms, t, x, start, free, lo, hi);
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t sum = 0;
    for (auto v : partial) sum += v;
    return sum;
}

}  // namespace detail

// Exact number of zeros of homogeneous f in P^(nvars-1)(F_q), by normalized
// representatives (first nonzero coordinate = 1).
inline BigInt count_projective(const FpPolynomial& f, const FqTable& t,
                               unsigned threads = std::thread::hardware_concurrency()) {
    if (!f.homogeneous()) throw contract_error("count_projective: polynomial must be homogeneous");
    auto terms = detail::compile_terms(f, t);
    BigInt total = 0;
    for (int lead = 0; lead < f.nvars; ++lead) {
        std::vector<std::uint64_t> x(f.nvars, 0);
        x[lead] = 1;
        int free = f.nvars - lead - 1;
        std::uint64_t combos = 1;
        for (int i = 0; i < free; ++i) combos *= t.q();
        total += detail::count_parallel(terms, t, x, lead + 1, free, combos, threads);
    }
    return total;
}

// Exact number of zeros of f with every coordinate nonzero.
inline BigInt count_torus(const FpPolynomial& f, const FqTable& t,
                          unsigned threads = std::thread::hardware_concurrency()) {
    auto terms = detail::compile_terms(f, t);
    std::uint64_t order = t.q() - 1;
    std::uint64_t combos = 1;
    for (int i = 0; i < f.nvars; ++i) combos *= order;
    // iterate exponents of the generator so zero never appears
    std::uint64_t hits = 0;
    std::vector<std::uint64_t> x(f.nvars, 1);
    auto count_exp_range = [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t local = 0;
        std::vector<std::uint64_t> xs(f.nvars, 1);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            std::uint64_t c = idx;
            for (int j = 0; j < f.nvars; ++j) {
                xs[j] = t.exp_of(c % order);
                c /= order;
            }
            if (detail::eval_terms(terms, xs, t) == 0) ++local;
        }
        return local;
    };
    unsigned nthreads = threads ? threads : 1;
    if (nthreads <= 1 || combos < 1u << 16) {
        hits = count_exp_range(0, combos);
    } else {
        std::vector<std::uint64_t> partial(nthreads, 0);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nthreads; ++w) {
            std::uint64_t lo = combos * w / nthreads;
            std::uint64_t hi = combos * (w + 1) / nthreads;
            pool.emplace_back([&, w, lo, hi] { partial[w] = count_exp_range(lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (auto v : partial) hits += v;
    }
    return BigInt(hits);
}

}  // namespace dwork

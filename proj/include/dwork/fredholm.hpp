#pragma once

// The direct method: truncated matrix of U = Psi_p . (mult by C(X)), where
// C(X) = prod_{delta} J(W_delta X^delta) and W(x) = x0 f(x). Subset traces of
// U feed the point-count formula
//   N_s = (p^{s(n-1)}-1)/(p^s-1)
//         + (-1)^n p^{-s} sum_A (-1)^{n-|A|} p^{s(n-|A|)} Tr((U|L_A)^s).
//
// Every entry of the matrix is a monomial pi^{w0} * (p-adic scalar) with
// w0 = p*u0 - v0, because each monomial of W has x0-degree exactly 1. The
// matrix therefore stores one scalar per entry; the pi-grade is implied by
// (u0 - v0) mod (p-1), and products/traces carry the grading through the
// reduction pi^(p-1) = -p.

#include "core.hpp"
#include "padic.hpp"
#include "poly.hpp"
#include "series.hpp"
#include "splitting.hpp"

#include <limits>

namespace dwork {

struct MonomialIndex {
    std::vector<int> v;  // (v0, v1, ..., vn) with d*v0 = v1 + ... + vn

    int v0() const { return v[0]; }
    bool operator==(const MonomialIndex&) const = default;
    auto operator<=>(const MonomialIndex& o) const { return v <=> o.v; }
};

// All v with v0 <= M and d*v0 = sum_{i>=1} v_i, lexicographic.
inline std::vector<MonomialIndex> monomial_basis(int n, int d, int M) {
    if (n < 1 || d < 1 || M < 0) throw contract_error("monomial_basis: need n,d >= 1, M >= 0");
    std::vector<MonomialIndex> out;
    std::vector<int> v(n + 1, 0);
    for (int v0 = 0; v0 <= M; ++v0) {
        v[0] = v0;
        // compositions of d*v0 into the n parts v[1..n], lex order
        auto rec2 = [&](auto&& self, int pos, int remaining) -> void {
            if (pos == n) {
                v[pos] = remaining;
                out.push_back({v});
                v[pos] = 0;
                return;
            }
            for (int k = 0; k <= remaining; ++k) {
                v[pos] = k;
                self(self, pos + 1, remaining - k);
            }
            v[pos] = 0;
        };
        rec2(rec2, 1, d * v0);
    }
    return out;
}

// Truncation degree from the target precision: least M with
// (1 - 1/10) * (p-1)^2/p^2 * (M+1) >= N.
inline int truncation_degree(long p, int N) {
    // ceil(N * 10 p^2 / (9 (p-1)^2)) - 1
    long long num = 10LL * N * p * p;
    long long den = 9LL * (p - 1) * (p - 1);
    return static_cast<int>((num + den - 1) / den) - 1;
}

namespace detail {

// Enumerates all (k_delta) >= 0 with sum k_delta * delta = w. Terms are
// reordered so that whenever a variable coordinate appears in exactly one
// remaining term, that term's multiplicity is forced instead of searched.
class DecompPlan {
  public:
    explicit DecompPlan(std::vector<std::vector<int>> deltas) : deltas_(std::move(deltas)) {
        if (deltas_.empty()) { return; }
        size_t w = deltas_.front().size();
        for (auto& d : deltas_) {
            if (d.size() != w) throw contract_error("decomposition: ragged exponent tuples");
            bool nonzero = false;
            for (int c : d) {
                if (c < 0) throw contract_error("decomposition: negative exponent");
                if (c > 0) nonzero = true;
            }
            if (!nonzero) throw contract_error("decomposition: zero exponent tuple in product");
        }
        // terms with more variables first, so diagonal terms end up forced
        order_.resize(deltas_.size());
        for (size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(), [&](size_t a, size_t b) {
            return var_count(deltas_[a]) > var_count(deltas_[b]);
        });
        forced_.assign(deltas_.size(), -1);
        for (size_t pos = 0; pos < order_.size(); ++pos) {
            const auto& d = deltas_[order_[pos]];
            for (size_t j = 1; j < w; ++j) {
                if (d[j] == 0) continue;
                bool exclusive = true;
                for (size_t later = pos + 1; later < order_.size(); ++later)
                    if (deltas_[order_[later]][j] > 0) { exclusive = false; break; }
                if (exclusive) { forced_[pos] = static_cast<int>(j); break; }
            }
        }
    }

    const std::vector<std::vector<int>>& deltas() const { return deltas_; }

    // f receives ks indexed like the original deltas.
    template <typename F>
    void for_each(std::vector<int>& w, std::vector<int>& ks, F&& f) const {
        if (deltas_.empty()) {
            for (int c : w)
                if (c != 0) return;
            f(ks);
            return;
        }
        rec(w, ks, 0, f);
    }

  private:
    static int var_count(const std::vector<int>& d) {
        int c = 0;
        for (size_t j = 1; j < d.size(); ++j)
            if (d[j] > 0) ++c;
        return c;
    }

    template <typename F>
    void rec(std::vector<int>& w, std::vector<int>& ks, size_t pos, F&& f) const {
        if (pos == order_.size()) {
            for (int c : w)
                if (c != 0) return;
            f(ks);
            return;
        }
        const auto& d = deltas_[order_[pos]];
        int klo = 0, khi;
        if (forced_[pos] >= 0) {
            int j = forced_[pos];
            if (w[j] % d[j] != 0) return;
            klo = khi = w[j] / d[j];
        } else {
            khi = std::numeric_limits<int>::max();
            for (size_t j = 0; j < d.size(); ++j)
                if (d[j] > 0) khi = std::min(khi, w[j] / d[j]);
        }
        for (int k = klo; k <= khi; ++k) {
            bool ok = true;
            for (size_t j = 0; j < d.size(); ++j) {
                w[j] -= k * d[j];
                if (w[j] < 0) ok = false;
            }
            if (ok) {
                ks[order_[pos]] = k;
                rec(w, ks, pos + 1, f);
                ks[order_[pos]] = 0;
            }
            for (size_t j = 0; j < d.size(); ++j) w[j] += k * d[j];
            if (!ok) return;
        }
    }

    std::vector<std::vector<int>> deltas_;
    std::vector<size_t> order_;
    std::vector<int> forced_;
};

}  // namespace detail

// Coefficient of X^w in prod_{delta} J(W_delta X^delta), exact PiElem form.
// W_terms lists (delta exponent tuple including the x0 slot, Teichmuller lift).
inline PiElem big_c_entry(const std::vector<std::pair<std::vector<int>, PadicInt>>& W_terms,
                          const std::vector<int>& w, const SplittingCoeffs& sc) {
    if (W_terms.empty()) throw contract_error("big_c_entry: empty product");
    long p = sc.prime();
    int prec = W_terms.front().second.precision();
    PiElem acc(p, prec);
    for (int c : w)
        if (c < 0) return acc;  // Phi_w = 0 outside N^(n+1)
    std::vector<std::vector<int>> deltas;
    for (auto& [d, lift] : W_terms) deltas.push_back(d);
    detail::DecompPlan plan(std::move(deltas));
    std::vector<int> wbuf = w, ks(W_terms.size(), 0);
    plan.for_each(wbuf, ks, [&](const std::vector<int>& kv) {
        PiElem term = PiElem::from_padic(PadicInt(1, p, prec));
        for (size_t t = 0; t < kv.size(); ++t) {
            if (sc.max_index() < kv[t])
                throw contract_error("big_c_entry: splitting coefficients too short");
            term *= sc.lambda(kv[t], prec);
            term *= PiElem::from_padic(W_terms[t].second.pow(kv[t]));
        }
        acc += term;
    });
    return acc;
}

// Truncated matrix of U = Psi_p . C over monomial_basis(n, d, M).
class UMatrix {
  public:
    UMatrix(const FpPolynomial& f, int prec, int M)
        : p_(f.p), prec_(prec), n_(f.nvars), d_(f.degree()), M_(M),
          modulus_(pow_big(f.p, prec)),
          basis_(monomial_basis(f.nvars, f.degree(), M)) {
        if (p_ < 3) throw contract_error("UMatrix: p must be an odd prime");
        if (!f.homogeneous()) throw contract_error("UMatrix: polynomial must be homogeneous");
        if (M < truncation_degree(p_, prec))
            throw contract_error("UMatrix: truncation degree too small to certify precision");
        small_ = modulus_ < BigInt(1) << 62;
        build(f);
    }

    size_t size() const { return basis_.size(); }
    const std::vector<MonomialIndex>& basis() const { return basis_; }
    long prime() const { return p_; }
    int precision() const { return prec_; }
    int nvars() const { return n_; }

    // Grade of entry (i, j): pi-exponent mod (p-1).
    int grade(size_t i, size_t j) const {
        long g = (basis_[i].v0() - basis_[j].v0()) % (p_ - 1);
        return static_cast<int>(g < 0 ? g + p_ - 1 : g);
    }

    // Materialized entry: scalar * pi^grade.
    PiElem entry(size_t i, size_t j) const {
        PiElem out(p_, prec_);
        out.set_coeff(grade(i, j), PadicInt(scalar(i, j), p_, prec_));
        return out;
    }

    // Traces of (U|L_A)^s for s = 1..S; bit i-1 of A_mask selects variable x_i.
    // Traces are pi-free by the grading, returned as PiElem per the audit.
    std::vector<PiElem> subset_traces(unsigned A_mask, int S) const {
        std::vector<size_t> idx;
        for (size_t i = 0; i < basis_.size(); ++i) {
            bool ok = true;
            for (int b = 0; b < n_; ++b)
                if ((A_mask >> b & 1u) && basis_[i].v[b + 1] == 0) { ok = false; break; }
            if (ok) idx.push_back(i);
        }
        std::vector<BigInt> traces = small_ ? block_traces_u64(idx, S) : block_traces_big(idx, S);
        std::vector<PiElem> out;
        for (auto& t : traces) out.push_back(PiElem::from_padic(PadicInt(t, p_, prec_)));
        return out;
    }

  private:
    BigInt scalar(size_t i, size_t j) const {
        return small_ ? BigInt(tu_[i * basis_.size() + j]) : tb_[i * basis_.size() + j];
    }

    void build(const FpPolynomial& f) {
        // W = x0 f: deltas carry an x0 slot of 1
        std::vector<std::vector<int>> deltas;
        std::vector<PadicInt> lifts;
        for (auto& t : f.terms) {
            if (t.coeff % p_ == 0) continue;
            std::vector<int> d(n_ + 1, 0);
            d[0] = 1;
            for (int i = 0; i < n_; ++i) d[i + 1] = t.exps[i];
            deltas.push_back(std::move(d));
            lifts.push_back(teichmuller(t.coeff, p_, prec_));
        }
        // sigma_t[k]: scalar of lambda_k * A_t^k in canonical graded form,
        // i.e. c_k * (-p)^floor(k/(p-1)) * A_t^k; always p-integral.
        int kmax = p_ * M_;  // w0 = p*u0 - v0 <= p*M
        SplittingCoeffs sc(p_, std::max(kmax, 1));
        std::vector<std::vector<BigInt>> sigma(deltas.size());
        for (size_t t = 0; t < deltas.size(); ++t) {
            sigma[t].resize(kmax + 1);
            PadicInt apow(1, p_, prec_);
            for (int k = 0; k <= kmax; ++k) {
                if (k > 0) apow *= lifts[t];
                sigma[t][k] = (sc.lambda_unit(k, prec_) * apow).residue();
            }
        }
        size_t dim = basis_.size();
        BigInt minus_p = modulus_ - p_;
        if (small_) {
            tu_.assign(dim * dim, 0);
        } else {
            tb_.assign(dim * dim, BigInt(0));
        }
        std::uint64_t mod_u = small_ ? modulus_.convert_to<std::uint64_t>() : 0;
        std::uint64_t mp_u = small_ ? minus_p.convert_to<std::uint64_t>() : 0;
        std::vector<std::vector<std::uint64_t>> sigma_u;
        if (small_) {
            sigma_u.resize(sigma.size());
            for (size_t t = 0; t < sigma.size(); ++t)
                for (auto& v : sigma[t]) sigma_u[t].push_back(v.convert_to<std::uint64_t>());
        }
        detail::DecompPlan plan(deltas);
        std::vector<int> w(n_ + 1), ks(deltas.size());
        for (size_t i = 0; i < dim; ++i) {
            for (size_t j = 0; j < dim; ++j) {
                bool neg = false;
                for (int c = 0; c <= n_; ++c) {
                    w[c] = p_ * basis_[i].v[c] - basis_[j].v[c];
                    if (w[c] < 0) { neg = true; break; }
                }
                if (neg) continue;
                int w0 = w[0];
                int target_floor = w0 / (p_ - 1);
                if (small_) {
                    std::uint64_t acc = 0;
                    plan.for_each(w, ks, [&](const std::vector<int>& kv) {
                        unsigned __int128 prod = 1;
                        int floors = 0;
                        for (size_t t = 0; t < kv.size(); ++t) {
                            prod = prod * sigma_u[t][kv[t]] % mod_u;
                            floors += kv[t] / (p_ - 1);
                        }
                        for (int e = floors; e < target_floor; ++e) prod = prod * mp_u % mod_u;
                        acc = (acc + static_cast<std::uint64_t>(prod)) % mod_u;
                    });
                    tu_[i * dim + j] = acc;
                } else {
                    BigInt acc = 0;
                    plan.for_each(w, ks, [&](const std::vector<int>& kv) {
                        BigInt prod = 1;
                        int floors = 0;
                        for (size_t t = 0; t < kv.size(); ++t) {
                            prod = prod * sigma[t][kv[t]] % modulus_;
                            floors += kv[t] / (p_ - 1);
                        }
                        for (int e = floors; e < target_floor; ++e) prod = prod * minus_p % modulus_;
                        acc = (acc + prod) % modulus_;
                    });
                    tb_[i * dim + j] = acc;
                }
            }
        }
    }

    // Graded product scalars: entry grades live in [0, p-2]; when two grades
    // sum past p-2 the reduction contributes a factor -p.
    std::vector<BigInt> block_traces_u64(const std::vector<size_t>& idx, int S) const {
        size_t m = idx.size();
        std::uint64_t mod_u = modulus_.convert_to<std::uint64_t>();
        std::uint64_t mp_u = (modulus_ - p_).convert_to<std::uint64_t>();
        size_t dim = basis_.size();
        std::vector<std::uint64_t> B(m * m);
        std::vector<int> g(m);
        long pm1 = p_ - 1;
        for (size_t a = 0; a < m; ++a) g[a] = basis_[idx[a]].v0() % pm1;
        auto grade = [&](size_t a, size_t b) {
            int d = g[a] - g[b];
            return d < 0 ? d + static_cast<int>(pm1) : d;
        };
        for (size_t a = 0; a < m; ++a)
            for (size_t b = 0; b < m; ++b) B[a * m + b] = tu_[idx[a] * dim + idx[b]];
        std::vector<BigInt> traces;
        if (m == 0) {
            traces.assign(S, BigInt(0));
            return traces;
        }
        // s = 1
        {
            std::uint64_t t = 0;
            for (size_t a = 0; a < m; ++a) t = (t + B[a * m + a]) % mod_u;
            traces.emplace_back(t);
        }
        std::vector<std::uint64_t> P = B, Q(m * m);
        for (int s = 2; s <= S; ++s) {
            if (s == S) {
                // trace of P*B without materializing it
                unsigned __int128 t = 0;
                for (size_t a = 0; a < m; ++a)
                    for (size_t k = 0; k < m; ++k) {
                        unsigned __int128 prod =
                            static_cast<unsigned __int128>(P[a * m + k]) * B[k * m + a] % mod_u;
                        if (grade(a, k) + grade(k, a) != 0 && (grade(a, k) + grade(k, a)) % pm1 == 0)
                            prod = prod * mp_u % mod_u;
                        t = (t + prod) % mod_u;
                    }
                traces.emplace_back(static_cast<std::uint64_t>(t));
                break;
            }
            for (size_t a = 0; a < m; ++a)
                for (size_t b = 0; b < m; ++b) {
                    unsigned __int128 acc = 0;
                    int gab = grade(a, b);
                    for (size_t k = 0; k < m; ++k) {
                        unsigned __int128 prod =
                            static_cast<unsigned __int128>(P[a * m + k]) * B[k * m + b] % mod_u;
                        if (grade(a, k) + grade(k, b) != gab) prod = prod * mp_u % mod_u;
                        acc = (acc + prod) % mod_u;
                    }
                    Q[a * m + b] = static_cast<std::uint64_t>(acc);
                }
            P.swap(Q);
            std::uint64_t t = 0;
            for (size_t a = 0; a < m; ++a) t = (t + P[a * m + a]) % mod_u;
            traces.emplace_back(t);
        }
        return traces;
    }

    std::vector<BigInt> block_traces_big(const std::vector<size_t>& idx, int S) const {
        size_t m = idx.size();
        size_t dim = basis_.size();
        BigInt mp = modulus_ - p_;
        std::vector<BigInt> B(m * m);
        std::vector<int> g(m);
        long pm1 = p_ - 1;
        for (size_t a = 0; a < m; ++a) g[a] = basis_[idx[a]].v0() % pm1;
        auto grade = [&](size_t a, size_t b) {
            int d = g[a] - g[b];
            return d < 0 ? d + static_cast<int>(pm1) : d;
        };
        for (size_t a = 0; a < m; ++a)
            for (size_t b = 0; b < m; ++b) B[a * m + b] = tb_[idx[a] * dim + idx[b]];
        std::vector<BigInt> traces;
        if (m == 0) {
            traces.assign(S, BigInt(0));
            return traces;
        }
        {
            BigInt t = 0;
            for (size_t a = 0; a < m; ++a) t = (t + B[a * m + a]) % modulus_;
            traces.push_back(t);
        }
        std::vector<BigInt> P = B, Q(m * m);
        for (int s = 2; s <= S; ++s) {
            for (size_t a = 0; a < m; ++a)
                for (size_t b = 0; b < m; ++b) {
                    BigInt acc = 0;
                    int gab = grade(a, b);
                    for (size_t k = 0; k < m; ++k) {
                        BigInt prod = P[a * m + k] * B[k * m + b] % modulus_;
                        if (grade(a, k) + grade(k, b) != gab) prod = prod * mp % modulus_;
                        acc = (acc + prod) % modulus_;
                    }
                    Q[a * m + b] = acc;
                }
            P.swap(Q);
            BigInt t = 0;
            for (size_t a = 0; a < m; ++a) t = (t + P[a * m + a]) % modulus_;
            traces.push_back(t);
        }
        return traces;
    }

    long p_;
    int prec_;
    int n_, d_, M_;
    BigInt modulus_;
    std::vector<MonomialIndex> basis_;
    bool small_ = false;
    std::vector<std::uint64_t> tu_;
    std::vector<BigInt> tb_;
};

// N_s from the 2^n subset traces at power s (traces[mask], mask over x_1..x_n).
inline BigInt counts_from_traces(const std::vector<PiElem>& traces_at_s, long p, int n, int s) {
    if (traces_at_s.size() != (1u << n))
        throw contract_error("counts_from_traces: need traces for all 2^n subsets");
    int prec = traces_at_s[0].precision();
    if (s >= prec)
        throw precision_error("counts_from_traces: need precision N > s");
    BigInt modulus = pow_big(p, prec);
    BigInt acc = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const PiElem& t = traces_at_s[mask];
        if (!t.is_pi_free())
            throw precision_error("counts_from_traces: subset trace is not pi-free");
        int abar = n - __builtin_popcount(mask);
        BigInt term = t.coeff(0).residue() * mod_pow(BigInt(p), BigInt(static_cast<long>(s) * abar), modulus) % modulus;
        if (abar % 2 != 0) term = modulus - term;
        acc = (acc + term) % modulus;
    }
    if (n % 2 != 0) acc = (modulus - acc) % modulus;
    BigInt ps = pow_big(p, static_cast<unsigned long>(s));
    if (acc % ps != 0) {
        auto v = PadicInt(acc, p, prec).valuation();
        throw precision_error(
            "counts_from_traces: trace combination not divisible by p^s (valuation " +
            v.value.convert_to<std::string>() + ", need >= " + std::to_string(s) + ")");
    }
    // value of acc/p^s known mod p^(prec-s)
    BigInt lifted = PadicInt(acc / ps, p, prec - s).centered_lift();
    // geometric part (p^{s(n-1)} - 1)/(p^s - 1)
    BigInt geo = 0;
    for (int j = 0; j < n - 1; ++j) geo += pow_big(p, static_cast<unsigned long>(s) * j);
    BigInt result = geo + lifted;
    if (result < 0)
        throw precision_error("counts_from_traces: negative count, precision/truncation failure");
    return result;
}

// det(1 - U T) of the truncated matrix through degree M_deg.
inline TruncSeries<Rational> fredholm_det(const UMatrix& U, int M_deg) {
    long p = U.prime();
    int prec = U.precision();
    long fact_ord = 0;
    for (long q = p; q <= M_deg; q *= p) fact_ord += M_deg / q;
    if (fact_ord >= prec)
        throw precision_error("fredholm_det: degree beyond the Newton-identity validity window");
    auto traces = U.subset_traces(0u, M_deg);
    std::vector<Rational> lifted;
    for (auto& t : traces) lifted.emplace_back(t.coeff(0).centered_lift());
    return traces_to_charpoly(lifted, M_deg);
}

}  // namespace dwork

#pragma once

// The full acceptance suite: eleven exact checks covering Teichmuller lifts,
// splitting coefficients, the two gamma routes, the additive character, the
// trace/determinant identities, the direct method, both closed-form
// families, the singularity guard, Picard-Fuchs, and pi-freeness of every
// final trace. Each criterion returns pass/fail plus a short detail line.

#include "deformation.hpp"
#include "diagonal.hpp"
#include "fredholm.hpp"
#include "oracle.hpp"
#include "splitting.hpp"
#include "zeta.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

namespace dwork {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

namespace selftest_detail {

struct Check {
    bool ok = true;
    std::ostringstream msg;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            msg << what;
        }
    }
};

inline void criterion_teichmuller(Check& c) {
    for (long p : {5L, 7L, 13L})
        for (int N : {3, 8})
            for (long a = 0; a < p; ++a) {
                PadicInt t = teichmuller(a, p, N);
                c.require(t.pow(p) == t, "x^p != x");
                c.require((t.residue() - a) % p == 0, "x != a mod p");
            }
    c.require(teichmuller(2, 5, 3).residue() == 57, "Teich(2;5,3) != 57");
}

inline void criterion_splitting(Check& c) {
    for (long p : {3L, 5L, 7L, 13L}) {
        SplittingCoeffs sc(p, 200);
        c.require(sc.lambda(0, 3) == PiElem::from_padic(PadicInt(1, p, 3)), "lambda_0 != 1");
        c.require(sc.lambda(1, 3) == PiElem::pi(p, 3), "lambda_1 != pi");
        for (int n = 0; n <= 200; ++n) {
            if (sc.c(n) == 0) continue;
            if (sc.lambda_order(n) < Rational(static_cast<long>(n) * (p - 1), p * p)) {
                c.require(false, "valuation bound fails at p=" + std::to_string(p) +
                                     ", n=" + std::to_string(n));
                return;
            }
        }
    }
}

inline void criterion_gamma(Check& c) {
    for (long p : {5L, 13L}) {
        int prec = 4;
        int K = gamma_terms_for(p, prec);
        SplittingCoeffs sc(p, static_cast<int>(p - 1 + static_cast<long>(K) * p));
        std::vector<Rational> zs{Rational(0), Rational(1), Rational(1, 2), Rational(1, 4),
                                 Rational(3, 4)};
        for (const Rational& z : zs) {
            PadicInt zp = PadicInt::from_rational(z, p, prec);
            for (long a = 0; a < p; ++a) {
                PadicInt arg = PadicInt(p, p, prec) * zp - PadicInt(a, p, prec);
                if (gamma_p_roberts(zp, a, sc, K) != gamma_p_at(arg)) {
                    c.require(false, "route mismatch at p=" + std::to_string(p));
                    return;
                }
            }
        }
    }
    long p = 13;
    int prec = 6;
    PadicInt g14 = gamma_p_at(PadicInt::from_rational(Rational(1, 4), p, prec));
    PadicInt g12 = gamma_p_at(PadicInt::from_rational(Rational(1, 2), p, prec));
    PadicInt g34 = gamma_p_at(PadicInt::from_rational(Rational(3, 4), p, prec));
    PadicInt one(1, p, prec);
    c.require(g12 * g12 == -one, "Gamma(1/2)^2 != -1");
    c.require(g14 * g14 * g34 * g34 == one, "Gamma(1/4)^2 Gamma(3/4)^2 != 1");
    c.require(g14 * g34 * g12 * g12 == -one, "product identity fails");
}

inline void criterion_character(Check& c) {
    for (long p : {5L, 7L}) {
        int prec = 6;
        SplittingCoeffs sc(p, character_truncation(p, prec));
        PiElem one = PiElem::from_padic(PadicInt(1, p, prec));
        std::vector<PiElem> theta;
        for (long x = 0; x < p; ++x) theta.push_back(dwork_character(x, sc, prec));
        PiElem sum(p, prec);
        for (long x = 0; x < p; ++x) {
            PiElem pw = one;
            for (long i = 0; i < p; ++i) pw *= theta[x];
            c.require(pw == one, "theta(x)^p != 1");
            sum += theta[x];
            for (long y = 0; y < p; ++y)
                if (theta[x] * theta[y] != dwork_character((x + y) % p, sc, prec)) {
                    c.require(false, "additivity fails at p=" + std::to_string(p));
                    return;
                }
        }
        c.require(sum.is_zero(), "character sum over F_p is nonzero");
    }
}

inline void criterion_trace_det(Check& c) {
    // exp-trace expansion vs fredholm_det on the truncated cubic matrix
    auto f = parse_polynomial("x1^3+x2^3+x3^3", 5);
    int prec = 4, M_deg = 8;
    UMatrix U(f, prec, truncation_degree(5, prec));
    auto det = fredholm_det(U, M_deg);
    auto traces = U.subset_traces(0u, M_deg);
    std::vector<Rational> g(M_deg + 1, Rational(0));
    for (int s = 1; s <= M_deg; ++s)
        g[s] = -Rational(traces[s - 1].coeff(0).centered_lift()) / s;
    std::vector<Rational> e(M_deg + 1, Rational(0));
    e[0] = 1;
    for (int n = 0; n < M_deg; ++n) {
        Rational acc(0);
        for (int k = 0; k <= n; ++k) acc += Rational(k + 1) * g[k + 1] * e[n - k];
        e[n + 1] = acc / (n + 1);
    }
    for (int k = 0; k <= M_deg; ++k)
        c.require(det[k] == e[k], "fredholm_det disagrees with the exp-trace expansion");

    // Newton identities vs direct determinant expansion on random 4x4
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<std::array<Rational, 4>, 4> A;
        for (auto& row : A)
            for (auto& x : row) x = dist(rng);
        // power sums via matrix powers
        std::vector<Rational> ps;
        auto P = A;
        for (int s = 1; s <= 4; ++s) {
            if (s > 1) {
                std::array<std::array<Rational, 4>, 4> Q{};
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        Rational acc(0);
                        for (int k = 0; k < 4; ++k) acc += P[i][k] * A[k][j];
                        Q[i][j] = acc;
                    }
                P = Q;
            }
            Rational tr(0);
            for (int i = 0; i < 4; ++i) tr += P[i][i];
            ps.push_back(tr);
        }
        auto cp = traces_to_charpoly(ps, 4);
        // det(I - AT) by cofactor expansion over polynomials of degree <= 4
        using Poly = TruncSeries<Rational>;
        std::function<Poly(std::vector<int>, std::vector<int>)> det_rec =
            [&](std::vector<int> rows, std::vector<int> cols) -> Poly {
            if (rows.size() == 1) {
                std::vector<Rational> e0(5, Rational(0));
                e0[0] = rows[0] == cols[0] ? 1 : 0;
                e0[1] = -A[rows[0]][cols[0]];
                return Poly(std::move(e0));
            }
            Poly acc = Poly::constant(Rational(0), 4);
            for (size_t j = 0; j < cols.size(); ++j) {
                std::vector<Rational> e0(5, Rational(0));
                e0[0] = rows[0] == cols[j] ? 1 : 0;
                e0[1] = -A[rows[0]][cols[j]];
                std::vector<int> r2(rows.begin() + 1, rows.end()), c2;
                for (size_t k = 0; k < cols.size(); ++k)
                    if (k != j) c2.push_back(cols[k]);
                Poly term = Poly(std::move(e0)) * det_rec(r2, c2);
                acc = (j % 2 == 0) ? acc + term : acc - term;
            }
            return acc;
        };
        auto direct = det_rec({0, 1, 2, 3}, {0, 1, 2, 3});
        for (int k = 0; k <= 4; ++k)
            c.require(cp[k] == direct[k], "charpoly disagrees with cofactor determinant");
    }
}

// Shared by criteria 6 and 11.
struct DirectRun {
    BigInt n1, n2;
    bool pi_free = true;
};

inline DirectRun run_direct_cubic() {
    auto f = parse_polynomial("x1^3+x2^3+x3^3", 5);
    int prec = 6;
    UMatrix U(f, prec, truncation_degree(5, prec));
    std::vector<std::vector<PiElem>> traces;
    for (unsigned mask = 0; mask < 8; ++mask) traces.push_back(U.subset_traces(mask, 2));
    DirectRun r;
    for (auto& per_mask : traces)
        for (auto& t : per_mask)
            if (!t.is_pi_free()) r.pi_free = false;
    for (int s = 1; s <= 2; ++s) {
        std::vector<PiElem> at_s;
        for (auto& per_mask : traces) at_s.push_back(per_mask[s - 1]);
        (s == 1 ? r.n1 : r.n2) = counts_from_traces(at_s, 5, 3, s);
    }
    return r;
}

inline void criterion_direct(Check& c) {
    auto r = run_direct_cubic();
    c.require(r.n1 == 6 && r.n2 == 36, "counts differ from 6, 36");
    auto f = parse_polynomial("x1^3+x2^3+x3^3", 5);
    c.require(r.n1 == count_projective(f, ff_build(5, 1)), "N_1 differs from oracle");
    c.require(r.n2 == count_projective(f, ff_build(5, 2)), "N_2 differs from oracle");
    auto z = zeta_fit({{1, r.n1}, {2, r.n2}}, {{1, 0}, {1, 1}}, 2, 5);
    c.require(z.numerator == std::vector<BigInt>{1, 0, 5}, "fitted numerator != 1 + 5T^2");
}

inline void criterion_quartic(Check& c) {
    auto z = fermat_quartic_P(13);  // oracle N_1 gate runs inside
    c.require(z.numerator.size() == 22, "numerator degree != 21");
    auto f = parse_polynomial("x1^4+x2^4+x3^4+x4^4", 13);
    BigInt n2 = count_projective(f, ff_build(13, 2));
    c.require(zeta_count(z, 2) == n2, "predicted N_2 differs from the F_169 oracle");
}

inline void criterion_deformation(Check& c) {
    auto z = deformation_zeta(13, 2, true);
    auto bf = block_factors(13, 2);
    c.require(bf.u5_root == 13, "u5 root != +13");
    BigInt a = residual_quadratic(13, bf, z.counts[0].second);
    c.require(abs(a) <= 26, "|a| > 2p");
    auto rep = verify_report(z);
    c.require(rep.functional_equation_ok, "root multiset not closed under w -> 169/w");
    c.require(rep.moduli_ok, "complex root moduli differ from 13");
    c.require(rep.newton_symmetric, "Newton polygon slopes not symmetric");
    c.require(z.checks.at("oracle_n2"), "N_2 check missing");
}

inline void criterion_singular(Check& c) {
    bool found = false;
    for (long g = 1; g < 13; ++g) {
        if (mod_pow(BigInt(g), 4, BigInt(13)) != 1) continue;
        found = true;
        try {
            block_factors(13, g);
            c.require(false, "Gamma^4 = 1 not rejected at p=13");
        } catch (const singular_error&) {
        }
    }
    c.require(found, "no fourth root of unity found mod 13");
    for (long g = 1; g < 5; ++g) {
        try {
            block_factors(5, g);
            c.require(false, "p=5 accepted a unit Gamma");
        } catch (const singular_error&) {
        }
    }
}

inline void criterion_picard_fuchs(Check& c) {
    auto rep = picard_fuchs_check(40);
    c.require(rep.c_block_ok, "1x1 block ODE fails");
    c.require(rep.two_by_two_ok, "2x2 closed form fails its ODE");
    c.require(rep.det_ok, "3x3 determinant identity fails");
}

inline void criterion_pi_free(Check& c) {
    auto r = run_direct_cubic();
    c.require(r.pi_free, "a subset trace has a nonzero pi component");
    c.require(r.n1 == 6 && r.n2 == 36, "integer outputs changed");
}

}  // namespace selftest_detail

inline std::vector<CriterionResult> run_acceptance() {
    using selftest_detail::Check;
    std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"teichmuller fixed points", selftest_detail::criterion_teichmuller},
        {"splitting coefficient bounds", selftest_detail::criterion_splitting},
        {"gamma cross-route and identities", selftest_detail::criterion_gamma},
        {"additive character suite", selftest_detail::criterion_character},
        {"trace/determinant identities", selftest_detail::criterion_trace_det},
        {"direct method vs oracle (cubic, F_5)", selftest_detail::criterion_direct},
        {"diagonal quartic vs oracle (p=13)", selftest_detail::criterion_quartic},
        {"Dwork family p=13, Gamma=2", selftest_detail::criterion_deformation},
        {"singularity guard", selftest_detail::criterion_singular},
        {"Picard-Fuchs consistency", selftest_detail::criterion_picard_fuchs},
        {"pi-freeness of final traces", selftest_detail::criterion_pi_free},
    };
    std::vector<CriterionResult> out;
    int id = 1;
    for (auto& [name, fn] : criteria) {
        CriterionResult r;
        r.id = id++;
        r.name = name;
        auto start = std::chrono::steady_clock::now();
        Check c;
        try {
            fn(c);
            r.passed = c.ok;
            r.detail = c.msg.str();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace dwork

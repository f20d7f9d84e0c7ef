#include <catch2/catch_amalgamated.hpp>

#include <dwork/fredholm.hpp>
#include <dwork/oracle.hpp>

using namespace dwork;

namespace {

// traces indexed [mask][s-1]
std::vector<std::vector<PiElem>> all_subset_traces(const UMatrix& U, int S) {
    std::vector<std::vector<PiElem>> out;
    for (unsigned mask = 0; mask < (1u << U.nvars()); ++mask)
        out.push_back(U.subset_traces(mask, S));
    return out;
}

BigInt count_at(const UMatrix& U, const std::vector<std::vector<PiElem>>& traces, int s) {
    std::vector<PiElem> at_s;
    for (auto& per_mask : traces) at_s.push_back(per_mask[s - 1]);
    return counts_from_traces(at_s, U.prime(), U.nvars(), s);
}

}  // namespace

TEST_CASE("monomial basis enumeration") {
    CHECK(monomial_basis(3, 3, 1).size() == 11);
    CHECK(monomial_basis(4, 4, 1).size() == 36);
    auto b = monomial_basis(1, 1, 2);
    REQUIRE(b.size() == 3);
    CHECK(b[0].v == std::vector<int>{0, 0});
    CHECK(b[1].v == std::vector<int>{1, 1});
    CHECK(b[2].v == std::vector<int>{2, 2});
    CHECK(std::is_sorted(b.begin(), b.end()));
    for (auto& m : monomial_basis(3, 3, 4)) {
        CHECK(3 * m.v[0] == m.v[1] + m.v[2] + m.v[3]);
        CHECK(m.v[0] <= 4);
    }
}

TEST_CASE("big_c_entry") {
    long p = 5;
    int prec = 4;
    SplittingCoeffs sc(p, 40);
    // W = x0(x1^3 + x2^3 + x3^3) with unit lifts
    std::vector<std::pair<std::vector<int>, PadicInt>> W;
    for (int i = 1; i <= 3; ++i) {
        std::vector<int> d(4, 0);
        d[0] = 1;
        d[i] = 3;
        W.emplace_back(d, teichmuller(1, p, prec));
    }
    CHECK(big_c_entry(W, {0, 0, 0, 0}, sc) == PiElem::from_padic(PadicInt(1, p, prec)));
    // w equal to a single monomial: coefficient lambda_1 * W = pi
    CHECK(big_c_entry(W, {1, 3, 0, 0}, sc) == PiElem::pi(p, prec));
    // valuation bound (p-1)/p^2 * w0
    auto v = big_c_entry(W, {3, 3, 3, 3}, sc).valuation();
    CHECK(!v.at_least);
    CHECK(v.value >= Rational(3 * (p - 1), p * p));
    CHECK(v.value == Rational(3, 4));  // lambda_1^3 with unit lifts
}

TEST_CASE("U matrix of the zero form is the identity on v = 0") {
    FpPolynomial f{5, 3, {FpMonomial{0, {3, 0, 0}}}};  // zero coefficient, degree 3
    UMatrix U(f, 2, truncation_degree(5, 2));
    for (size_t i = 0; i < U.size(); ++i)
        for (size_t j = 0; j < U.size(); ++j) {
            PiElem e = U.entry(i, j);
            if (i == 0 && j == 0)
                CHECK(e == PiElem::from_padic(PadicInt(1, 5, 2)));
            else
                CHECK(e.is_zero());
        }
}

TEST_CASE("stability: columns in L_A have no entries outside L_A") {
    auto f = parse_polynomial("x1^3+x2^3+x3^3", 5);
    UMatrix U(f, 2, truncation_degree(5, 2));
    auto& basis = U.basis();
    for (unsigned mask = 1; mask < 8; ++mask) {
        for (size_t j = 0; j < U.size(); ++j) {
            bool in_LA = true;
            for (int b = 0; b < 3; ++b)
                if ((mask >> b & 1u) && basis[j].v[b + 1] == 0) in_LA = false;
            if (!in_LA) continue;
            for (size_t i = 0; i < U.size(); ++i) {
                bool u_outside = false;
                for (int b = 0; b < 3; ++b)
                    if ((mask >> b & 1u) && basis[i].v[b + 1] == 0) u_outside = true;
                if (u_outside) CHECK(U.entry(i, j).is_zero());
            }
        }
    }
}

TEST_CASE("swap structure of the Fermat cubic at p = 5") {
    auto f = parse_polynomial("x1^3+x2^3+x3^3", 5);
    int prec = 4;  // the (3,3,3,3) diagonal entry has order exactly 3
    UMatrix U(f, prec, truncation_degree(5, prec));
    auto& basis = U.basis();
    auto find = [&](std::vector<int> v) {
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i].v == v) return i;
        throw std::runtime_error("basis element not found");
    };
    size_t a = find({1, 1, 1, 1}), b = find({2, 2, 2, 2});
    // dominant transitions (1,1,1) <-> (2,2,2): unit times pi-power
    CHECK(U.entry(a, b).valuation() == Valuation{Rational(3, 4), false});
    auto vba = U.entry(b, a).valuation();
    CHECK(!vba.at_least);
    CHECK(vba.value >= Rational(9 * 4, 25));
    // the exponent pattern kills the diagonal at (1,1,1,1): 3 does not divide 4
    CHECK(U.entry(a, a).is_zero());
    // nonzero diagonal audit at v = (3,3,3,3): w = (p-1)v, k_i = 4
    size_t c = find({3, 3, 3, 3});
    auto vcc = U.entry(c, c).valuation();
    CHECK(!vcc.at_least);
    CHECK(vcc.value >= Rational(12 * 4, 25));
}

TEST_CASE("boundary layer valuation certificate at u0 = M") {
    auto f = parse_polynomial("x1^3+x2^3+x3^3", 5);
    int prec = 3;
    int M = truncation_degree(5, prec);
    UMatrix U(f, prec, M);
    auto& basis = U.basis();
    for (size_t i = 0; i < U.size(); ++i) {
        if (basis[i].v0() != M) continue;
        for (size_t j = 0; j < U.size(); j += 7) {
            PiElem e = U.entry(i, j);
            if (e.is_zero()) continue;
            Rational bound((5 - 1) * (5 * M - basis[j].v0()), 25);
            auto v = e.valuation();
            CHECK((v.at_least || v.value >= bound));
        }
    }
}

TEST_CASE("hyperplane count: x1 = 0 in P^2(F_5)") {
    auto f = parse_polynomial("x1", 5, 3);
    int prec = 3;
    UMatrix U(f, prec, truncation_degree(5, prec));
    auto traces = all_subset_traces(U, 1);
    CHECK(count_at(U, traces, 1) == 6);
}

TEST_CASE("direct method end-to-end: Fermat cubic over F_5") {
    auto f = parse_polynomial("x1^3+x2^3+x3^3", 5);
    int prec = 6;
    UMatrix U(f, prec, truncation_degree(5, prec));
    auto traces = all_subset_traces(U, 2);
    BigInt n1 = count_at(U, traces, 1);
    BigInt n2 = count_at(U, traces, 2);
    CHECK(n1 == 6);
    CHECK(n2 == 36);
    CHECK(n1 == count_projective(f, ff_build(5, 1)));
    CHECK(n2 == count_projective(f, ff_build(5, 2)));

    // pi-freeness audit of every subset trace (the final outputs are plain
    // PadicInts before lifting, so any root pi -> zeta pi gives the same counts)
    for (auto& per_mask : traces)
        for (auto& t : per_mask) CHECK(t.is_pi_free());

    // torus consistency: q N* = (q-1)^n + (q-1)^(n+1) Tr(U^s)
    auto full = U.subset_traces(0u, 2);
    FqTable t1 = ff_build(5, 1), t2 = ff_build(5, 2);
    for (int s = 1; s <= 2; ++s) {
        BigInt q = pow_big(5, s);
        BigInt nstar = count_torus(f, s == 1 ? t1 : t2);
        BigInt lhs = q * nstar - pow_big(q - 1, 3);
        BigInt rhs = pow_big(q - 1, 4) * full[s - 1].coeff(0).residue();
        BigInt mod = pow_big(5, prec - s);  // margin for the q^s division
        CHECK(mod_pos(lhs - rhs, mod) == 0);
    }
}

TEST_CASE("fredholm determinant equals the exp-trace expansion") {
    auto f = parse_polynomial("x1^3+x2^3+x3^3", 5);
    int prec = 4;
    int M_deg = 8;
    UMatrix U(f, prec, truncation_degree(5, prec));
    auto det = fredholm_det(U, M_deg);

    auto traces = U.subset_traces(0u, M_deg);
    // exp(-sum t_s T^s / s) over exact rationals from the same lifted traces
    std::vector<Rational> g(M_deg + 1, Rational(0));
    for (int s = 1; s <= M_deg; ++s) g[s] = -Rational(traces[s - 1].coeff(0).centered_lift()) / s;
    std::vector<Rational> e(M_deg + 1, Rational(0));
    e[0] = 1;
    for (int n = 0; n < M_deg; ++n) {
        // (n+1) e_{n+1} = sum_{k} (k+1) g_{k+1} e_{n-k}
        Rational acc(0);
        for (int k = 0; k <= n; ++k) acc += Rational(k + 1) * g[k + 1] * e[n - k];
        e[n + 1] = acc / (n + 1);
    }
    for (int k = 0; k <= M_deg; ++k) CHECK(det[k] == e[k]);

    CHECK(det[0] == 1);

    // coefficient valuations rise at least as fast as the sorted column
    // weights of the pi^(v0)-rescaled matrix
    long p = 5;
    std::vector<Rational> weights;
    for (auto& v : U.basis()) {
        long v0 = v.v0();
        long u0 = (v0 + p - 1) / p;  // least row with p*u0 - v0 >= 0
        weights.push_back(Rational((p - 1) * (p * u0 - v0), p * p) + Rational(v0 - u0, p - 1));
    }
    std::sort(weights.begin(), weights.end());
    Rational prefix(0);
    for (int k = 1; k <= M_deg; ++k) {
        prefix += weights[k - 1];
        long fact_ord = 0;
        for (long q = p; q <= k; q *= p) fact_ord += k / q;
        // the computed coefficient matches the true one mod p^(prec - ord(k!)),
        // so the bound is only visible while it stays below that slack
        if (prefix >= prec - fact_ord) break;
        if (det[k] != 0) CHECK(ord_p(det[k], p) >= prefix);
    }
}

TEST_CASE("zero matrix has unit determinant and zero traces") {
    FpPolynomial f{5, 3, {FpMonomial{0, {3, 0, 0}}}};
    UMatrix U(f, 3, truncation_degree(5, 3));
    auto det = fredholm_det(U, 4);
    CHECK(det[0] == 1);
    // only the v = 0 fixed point contributes: det = 1 - T
    CHECK(det[1] == -1);
    for (int k = 2; k <= 4; ++k) CHECK(det[k] == 0);
}

TEST_CASE("counts_from_traces error paths") {
    long p = 5;
    int n = 3;
    std::vector<PiElem> bad(8, PiElem(p, 2));
    bad[0].set_coeff(1, PadicInt(1, p, 2));
    CHECK_THROWS_AS(counts_from_traces(bad, p, n, 1), precision_error);  // not pi-free
    std::vector<PiElem> short_list(4, PiElem(p, 3));
    CHECK_THROWS_AS(counts_from_traces(short_list, p, n, 1), contract_error);
}

TEST_CASE("fredholm_det degree window guard") {
    auto f = parse_polynomial("x1^3+x2^3+x3^3", 5);
    UMatrix U(f, 2, truncation_degree(5, 2));
    CHECK_THROWS_AS(fredholm_det(U, 30), precision_error);  // ord_5(30!) = 7 >= 2
}

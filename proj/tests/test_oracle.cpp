#include <catch2/catch_amalgamated.hpp>

#include <dwork/oracle.hpp>

#include <random>

using namespace dwork;

TEST_CASE("polynomial parsing") {
    auto f = parse_polynomial("x1^3+x2^3+x3^3", 5);
    CHECK(f.nvars == 3);
    CHECK(f.degree() == 3);
    CHECK(f.homogeneous());
    REQUIRE(f.terms.size() == 3);

    auto g = parse_polynomial("x1^4 + x2^4 + x3^4 + x4^4 - 8*x1*x2*x3*x4", 13);
    CHECK(g.nvars == 4);
    CHECK(g.degree() == 4);
    CHECK(g.homogeneous());
    CHECK(g.terms.back().coeff == 5);  // -8 mod 13

    CHECK(!parse_polynomial("x1^2 + x2", 5).homogeneous());
    CHECK_THROWS_AS(parse_polynomial("", 5), contract_error);
    CHECK_THROWS_AS(parse_polynomial("x1 + + x2", 5), contract_error);
}

TEST_CASE("field table construction") {
    FqTable f9(3, 2);
    CHECK(f9.q() == 9);
    CHECK(f9.modulus_coeffs() == std::vector<long>{1, 0});  // x^2 + 1

    FqTable f13(13, 1);
    CHECK(f13.q() == 13);
    CHECK(f13.generator() == 2);

    FqTable f25(5, 2);
    CHECK(f25.q() == 25);

    CHECK_THROWS_AS(FqTable(13, 3, 1000), contract_error);  // cap exceeded
}

TEST_CASE("field arithmetic properties") {
    FqTable t(5, 2);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        std::uint64_t a = rng() % t.q(), b = rng() % t.q(), c = rng() % t.q();
        CHECK(t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)));
        CHECK(t.frobenius(t.add(a, b)) == t.add(t.frobenius(a), t.frobenius(b)));
        CHECK(t.add(a, t.neg(a)) == 0);
    }
    // generator order is exactly q - 1
    for (std::uint64_t k = 1; k < t.q() - 1; ++k) CHECK(t.exp_of(k) != 1);
    CHECK(t.exp_of(t.q() - 1) == 1);
}

TEST_CASE("projective counts") {
    // coordinate hyperplane in P^2(F_3): #P^1(F_3) = 4
    FqTable f3(3, 1);
    CHECK(count_projective(parse_polynomial("x1", 3, 3), f3) == 4);

    FqTable f5(5, 1);
    FqTable f25(5, 2);
    auto cubic = parse_polynomial("x1^3+x2^3+x3^3", 5);
    CHECK(count_projective(cubic, f5) == 6);
    CHECK(count_projective(cubic, f25) == 36);
}

TEST_CASE("torus counts") {
    FqTable f5(5, 1);
    CHECK(count_torus(parse_polynomial("x1", 5, 3), f5) == 0);
    auto cubic = parse_polynomial("x1^3+x2^3+x3^3", 5);
    // inclusion-exclusion: (q-1) N = -1 + sum_A N*(f_A), where f_A lives on
    // the coordinates outside A
    for (int s : {1, 2}) {
        FqTable t(5, s);
        BigInt total = 0;
        for (unsigned mask = 0; mask < 8; ++mask) {
            auto fa = cubic.restricted(mask).dropped(mask);
            if (fa.terms.empty()) {
                // identically zero: every torus point counts
                BigInt all = 1;
                for (int i = 0; i < fa.nvars; ++i) all *= t.q() - 1;
                total += all;
            } else {
                total += count_torus(fa, t);
            }
        }
        CHECK((BigInt(t.q()) - 1) * count_projective(cubic, t) == total - 1);
    }
}

TEST_CASE("parallel range-split equals single-threaded") {
    FqTable f25(5, 2);
    auto cubic = parse_polynomial("x1^3+x2^3+x3^3", 5);
    CHECK(count_projective(cubic, f25, 1) == count_projective(cubic, f25, 4));
    CHECK(count_torus(cubic, f25, 1) == count_torus(cubic, f25, 4));
}

TEST_CASE("quartic counts used by the diagonal and deformation checks") {
    FqTable f13(13, 1);
    auto fermat4 = parse_polynomial("x1^4+x2^4+x3^4+x4^4", 13);
    BigInt n1 = count_projective(fermat4, f13);
    // #P^3(F_13) = 2380; smooth quartic surface count is near p^2 + ... sanity window
    CHECK(n1 > 0);
    CHECK(n1 < 2380);
}

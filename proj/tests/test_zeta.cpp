#include <catch2/catch_amalgamated.hpp>

#include <dwork/zeta.hpp>

using namespace dwork;

TEST_CASE("power sums from numerator coefficients") {
    // (1 - 2T)(1 - 3T) = 1 - 5T + 6T^2
    auto t = reciprocal_root_power_sums({1, -5, 6}, 4);
    CHECK(t == std::vector<BigInt>{5, 13, 35, 97});
    // degree above the root count just keeps recursing
    CHECK(reciprocal_root_power_sums({1, -1}, 3) == std::vector<BigInt>{1, 1, 1});
}

TEST_CASE("zeta_fit recovers the cubic numerator") {
    auto z = zeta_fit({{1, 6}, {2, 36}}, {{1, 0}, {1, 1}}, 2, 5);
    CHECK(z.numerator == std::vector<BigInt>{1, 0, 5});
    CHECK(z.checks.at("count_round_trip"));
    CHECK(zeta_count(z, 1) == 6);
    CHECK(zeta_count(z, 2) == 36);
}

TEST_CASE("zeta_fit degenerate shapes") {
    // affine n-space: N_s = q^(ns), numerator (1 - q^n T) inverted, no denominator
    auto affine = zeta_fit({{1, 125}}, {}, 1, 5, true);
    CHECK(affine.numerator == std::vector<BigInt>{1, -125});
    CHECK(zeta_count(affine, 3) == 1953125);

    // a single point: N_s = 1, numerator 1
    auto point = zeta_fit({{1, 1}, {2, 1}}, {{1, 0}}, 0, 5);
    CHECK(point.numerator == std::vector<BigInt>{1});
}

TEST_CASE("zeta_fit error paths") {
    CHECK_THROWS_AS(zeta_fit({{1, 6}}, {{1, 0}, {1, 1}}, 2, 5), contract_error);  // missing N_2
    // counts inconsistent with any degree-2 numerator over this denominator
    CHECK_THROWS_AS(zeta_fit({{1, 6}, {2, 36}, {3, 999}}, {{1, 0}, {1, 1}}, 2, 5),
                    precision_error);
}

TEST_CASE("verify_report on the cubic numerator") {
    ZetaData z;
    z.p = 5;
    z.n = 3;
    z.numerator = {1, 0, 5};
    auto rep = verify_report(z);
    CHECK(rep.weight == 1);
    CHECK(rep.moduli_ok);  // |roots| = sqrt(5)
    CHECK(rep.functional_equation_ok);
    CHECK(rep.newton_symmetric);
    REQUIRE(rep.slopes.size() == 1);
    CHECK(rep.slopes[0].slope == Rational(1, 2));
    CHECK(rep.slopes[0].length == 2);
}

TEST_CASE("verify_report flags failures") {
    ZetaData z;
    z.p = 5;
    z.n = 3;
    z.numerator = {1, -6};  // root 6, not of modulus sqrt(5)
    auto rep = verify_report(z);
    CHECK(!rep.moduli_ok);
    CHECK(!rep.functional_equation_ok);
}

TEST_CASE("verify_report handles repeated roots") {
    // (1 - 13T)^2 (1 + 13T) at weight 2: slopes 1, closed under w -> 169/w
    ZetaData z;
    z.p = 13;
    z.n = 4;
    z.numerator = {1, -13, -169, 2197};
    auto rep = verify_report(z);
    CHECK(rep.moduli_ok);
    CHECK(rep.max_modulus_error < 1e-9);
    CHECK(rep.functional_equation_ok);
    CHECK(rep.newton_symmetric);
}

TEST_CASE("verify_report functional equation is multiset-exact") {
    // roots {13, 13} vs {13, -13}: only the former squares to 169 each... both do;
    // distinguish via (1 - 13T)(1 - 26T): 26 * 169/26 pairing fails
    ZetaData z;
    z.p = 13;
    z.n = 4;
    z.numerator = {1, -39, 338};  // (1-13T)(1-26T)
    auto rep = verify_report(z);
    CHECK(!rep.functional_equation_ok);
}

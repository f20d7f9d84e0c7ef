#include <catch2/catch_amalgamated.hpp>

#include <dwork/series.hpp>

#include <array>
#include <random>

using namespace dwork;

namespace {

TruncSeries<Rational> rational_series(std::vector<long> coeffs) {
    std::vector<Rational> c(coeffs.begin(), coeffs.end());
    return TruncSeries<Rational>(std::move(c));
}

}  // namespace

TEST_CASE("series multiply and add truncate to the smaller degree") {
    auto geom = rational_series({1, 1, 1, 1, 1, 1});
    auto one_minus_t = rational_series({1, -1, 0, 0, 0, 0});
    auto prod = one_minus_t * geom;
    for (int i = 0; i <= 5; ++i) CHECK(prod[i] == (i == 0 ? 1 : 0));

    auto a = rational_series({1, 1});
    CHECK((a * a) == rational_series({1, 2}));  // t^2 term truncated away
    auto b = rational_series({1, 1, 0});
    CHECK((b * b) == rational_series({1, 2, 1}));
}

TEST_CASE("binomial power over rationals") {
    std::vector<Rational> u(9, Rational(0));
    u[4] = -1;
    auto s = binomial_power(TruncSeries<Rational>(u), Rational(-1, 2));
    CHECK(s[0] == 1);
    CHECK(s[4] == Rational(1, 2));
    CHECK(s[8] == Rational(3, 8));
    for (int i : {1, 2, 3, 5, 6, 7}) CHECK(s[i] == 0);
}

TEST_CASE("binomial identity ((1-t)^(-1/2))^2 (1-t) = 1 through degree 40") {
    std::vector<Rational> u(41, Rational(0));
    u[1] = -1;
    auto h = binomial_power(TruncSeries<Rational>(u), Rational(-1, 2));
    std::vector<Rational> lin(41, Rational(0));
    lin[0] = 1;
    lin[1] = -1;
    auto prod = h * h * TruncSeries<Rational>(lin);
    for (int i = 0; i <= 40; ++i) CHECK(prod[i] == (i == 0 ? 1 : 0));
}

TEST_CASE("binomial power over Z/p^N rejects non-p-integral exponents") {
    long p = 5;
    int N = 4;
    std::vector<PadicInt> u(6, PadicInt(0, p, N));
    u[1] = PadicInt(25, p, N);
    TruncSeries<PadicInt> su(u);
    CHECK_THROWS_AS(binomial_power_padic(su, Rational(1, 5)), contract_error);
    auto s = binomial_power_padic(su, Rational(1, 2));
    CHECK((s * s)[1].residue() == 25);  // square root squares back
}

TEST_CASE("newton polygon") {
    auto np = newton_polygon({{0, Rational(0)}, {1, Rational(0)}, {2, Rational(1)}, {3, Rational(3)}});
    REQUIRE(np.vertices.size() == 4);
    REQUIRE(np.slopes.size() == 3);
    CHECK(np.slopes[0] == NewtonSlope{Rational(0), 1});
    CHECK(np.slopes[1] == NewtonSlope{Rational(1), 1});
    CHECK(np.slopes[2] == NewtonSlope{Rational(2), 1});

    auto np2 = newton_polygon({{0, Rational(0)}, {1, Rational(2)}, {2, Rational(1)}});
    REQUIRE(np2.vertices.size() == 2);
    CHECK(np2.slopes == std::vector<NewtonSlope>{{Rational(1, 2), 2}});

    // interior points above the chord merge into one slope-1 segment
    auto np3 = newton_polygon({{0, Rational(0)}, {7, Rational(9)}, {21, Rational(21)}});
    CHECK(np3.slopes == std::vector<NewtonSlope>{{Rational(1), 21}});

    CHECK_THROWS_AS(newton_polygon({}), contract_error);
}

TEST_CASE("newton polygon minorizes its input points and is convex") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<long, Rational>> pts{{0, Rational(0)}};
        for (long i = 1; i <= 12; ++i) pts.emplace_back(i, Rational(rng() % 30, 1 + rng() % 3));
        auto np = newton_polygon(pts);
        for (size_t i = 1; i < np.slopes.size(); ++i) CHECK(np.slopes[i - 1].slope < np.slopes[i].slope);
        for (auto& [x, y] : pts) {
            for (size_t i = 1; i < np.vertices.size(); ++i) {
                auto& a = np.vertices[i - 1];
                auto& b = np.vertices[i];
                if (x < a.first || x > b.first) continue;
                Rational chord = a.second + (b.second - a.second) * (x - a.first) / (b.first - a.first);
                CHECK(y >= chord);
            }
        }
    }
}

TEST_CASE("slope root count") {
    NewtonPolygon np;
    np.slopes = {{Rational(0), 1}, {Rational(1), 19}, {Rational(2), 1}};
    CHECK(slope_root_count(np, Rational(1)) == 20);
    CHECK(slope_root_count(np, Rational(0)) == 1);
    CHECK(slope_root_count(np, Rational(-1)) == 0);
    NewtonPolygon half;
    half.slopes = {{Rational(1, 2), 2}};
    CHECK(slope_root_count(half, Rational(0)) == 0);
    // nondecreasing in lambda
    long prev = 0;
    for (int k = -2; k <= 4; ++k) {
        long c = slope_root_count(np, Rational(k, 2));
        CHECK(c >= prev);
        CHECK(c <= 21);
        prev = c;
    }
}

TEST_CASE("traces_to_charpoly basics") {
    CHECK(traces_to_charpoly({0, 0, 0}, 3) == rational_series({1, 0, 0, 0}));
    CHECK(traces_to_charpoly({2, 2}, 2) == rational_series({1, -2, 1}));
    CHECK(traces_to_charpoly({Rational(7)}, 1)[1] == -7);
    CHECK_THROWS_AS(traces_to_charpoly({1, 2}, 3), contract_error);
}

TEST_CASE("traces_to_charpoly matches cofactor determinant on random 4x4 matrices") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        long A[4][4];
        for (auto& row : A)
            for (auto& x : row) x = static_cast<long>(rng() % 19) - 9;
        // power sums tr(A^s)
        std::vector<Rational> t;
        long P[4][4], Q[4][4];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) P[i][j] = A[i][j];
        for (int s = 1; s <= 4; ++s) {
            if (s > 1) {
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        long acc = 0;
                        for (int k = 0; k < 4; ++k) acc += P[i][k] * A[k][j];
                        Q[i][j] = acc;
                    }
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) P[i][j] = Q[i][j];
            }
            long tr = 0;
            for (int i = 0; i < 4; ++i) tr += P[i][i];
            t.emplace_back(tr);
        }
        auto charpoly = traces_to_charpoly(t, 4);
        // det(I - A T) by cofactor expansion over polynomials in T
        using Poly = std::array<Rational, 5>;
        auto det = [&](auto&& self, std::vector<std::vector<Poly>> m) -> Poly {
            size_t n = m.size();
            if (n == 1) return m[0][0];
            Poly acc{};
            for (size_t c = 0; c < n; ++c) {
                std::vector<std::vector<Poly>> minor;
                for (size_t r = 1; r < n; ++r) {
                    std::vector<Poly> row;
                    for (size_t cc = 0; cc < n; ++cc)
                        if (cc != c) row.push_back(m[r][cc]);
                    minor.push_back(row);
                }
                Poly sub = self(self, minor);
                for (int i = 0; i <= 4; ++i)
                    for (int j = 0; i + j <= 4; ++j) {
                        Rational term = m[0][c][i] * sub[j];
                        if (c % 2 != 0) term = -term;
                        acc[i + j] += term;
                    }
            }
            return acc;
        };
        std::vector<std::vector<Poly>> m(4, std::vector<Poly>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                m[i][j] = Poly{};
                if (i == j) m[i][j][0] = 1;
                m[i][j][1] = Rational(-A[i][j]);
            }
        Poly d = det(det, m);
        for (int i = 0; i <= 4; ++i) CHECK(charpoly[i] == d[i]);
    }
}

#pragma once

// Truncated one-variable power series, Newton polygons, slope-level root
// counting, and power sums -> characteristic polynomial via Newton's
// identities.

#include "core.hpp"
#include "padic.hpp"

#include <algorithm>
#include <utility>

namespace dwork {

inline Rational ring_scalar(const Rational&, long k) { return Rational(k); }
inline PadicInt ring_scalar(const PadicInt& proto, long k) {
    return PadicInt(k, proto.prime(), proto.precision());
}
inline PiElem ring_scalar(const PiElem& proto, long k) {
    return PiElem::from_padic(PadicInt(k, proto.prime(), proto.precision()));
}

// Coefficients indexed by degree; operations truncate to the smaller degree.
template <typename R>
class TruncSeries {
  public:
    explicit TruncSeries(std::vector<R> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw contract_error("TruncSeries: empty coefficient list");
    }

    static TruncSeries constant(R value, int degree) {
        std::vector<R> c(degree + 1, value - value);  // ring zero of the right shape
        c[0] = std::move(value);
        return TruncSeries(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const R& operator[](int i) const { return c_.at(i); }
    R& operator[](int i) { return c_.at(i); }
    const std::vector<R>& coeffs() const { return c_; }

    TruncSeries operator+(const TruncSeries& o) const {
        int m = std::min(degree(), o.degree());
        std::vector<R> out(c_.begin(), c_.begin() + m + 1);
        for (int i = 0; i <= m; ++i) out[i] = out[i] + o.c_[i];
        return TruncSeries(std::move(out));
    }

    TruncSeries operator-(const TruncSeries& o) const {
        int m = std::min(degree(), o.degree());
        std::vector<R> out(c_.begin(), c_.begin() + m + 1);
        for (int i = 0; i <= m; ++i) out[i] = out[i] - o.c_[i];
        return TruncSeries(std::move(out));
    }

    TruncSeries operator*(const TruncSeries& o) const {
        int m = std::min(degree(), o.degree());
        std::vector<R> out(m + 1, c_[0] - c_[0]);
        for (int i = 0; i <= m; ++i) {
            if (c_[i] == c_[0] - c_[0]) continue;
            for (int j = 0; i + j <= m && j <= o.degree(); ++j)
                out[i + j] = out[i + j] + c_[i] * o.c_[j];
        }
        return TruncSeries(std::move(out));
    }

    // Formal derivative; degree drops by one.
    TruncSeries derivative() const {
        if (degree() == 0) return TruncSeries(std::vector<R>{c_[0] - c_[0]});
        std::vector<R> out(c_.size() - 1, c_[0] - c_[0]);
        for (size_t i = 1; i < c_.size(); ++i)
            out[i - 1] = c_[i] * ring_scalar(c_[0], static_cast<long>(i));
        return TruncSeries(std::move(out));
    }

    TruncSeries truncated(int m) const {
        if (m >= degree()) return *this;
        return TruncSeries(std::vector<R>(c_.begin(), c_.begin() + m + 1));
    }

    bool operator==(const TruncSeries& o) const = default;

  private:
    std::vector<R> c_;
};

// (1 + u)^e over exact rationals; u must have zero constant term.
inline TruncSeries<Rational> binomial_power(const TruncSeries<Rational>& u, const Rational& e) {
    if (u[0] != 0) throw contract_error("binomial_power: series must have zero constant term");
    int m = u.degree();
    std::vector<Rational> out(m + 1, Rational(0));
    out[0] = 1;
    TruncSeries<Rational> upow = TruncSeries<Rational>::constant(Rational(1), m);
    Rational binom(1);
    for (int i = 1; i <= m; ++i) {
        upow = upow * u;
        binom *= (e - (i - 1)) / i;
        if (binom == 0) break;
        bool all_zero = true;
        for (int j = 0; j <= m; ++j) {
            if (upow[j] != 0) { all_zero = false; out[j] += binom * upow[j]; }
        }
        if (all_zero) break;
    }
    return TruncSeries<Rational>(std::move(out));
}

// (1 + u)^e over Z/p^N. Requires e in Z_p: a denominator divisible by p is
// rejected because binomial(e, i) then leaves the p-adic ring.
inline TruncSeries<PadicInt> binomial_power_padic(const TruncSeries<PadicInt>& u, const Rational& e) {
    if (!u[0].is_zero())
        throw contract_error("binomial_power_padic: series must have zero constant term");
    long p = u[0].prime();
    if (boost::multiprecision::denominator(e) % p == 0)
        throw contract_error("binomial_power_padic: exponent is not p-integral");
    int prec = u[0].precision();
    int m = u.degree();
    std::vector<PadicInt> out(m + 1, PadicInt(0, p, prec));
    out[0] = PadicInt(1, p, prec);
    TruncSeries<PadicInt> upow = TruncSeries<PadicInt>::constant(PadicInt(1, p, prec), m);
    Rational binom(1);
    for (int i = 1; i <= m; ++i) {
        upow = upow * u;
        binom *= (e - (i - 1)) / i;
        PadicInt b = PadicInt::from_rational(binom, p, prec);
        for (int j = 0; j <= m; ++j) out[j] += b * upow[j];
    }
    return TruncSeries<PadicInt>(std::move(out));
}

struct NewtonSlope {
    Rational slope;
    long length;  // horizontal length

    bool operator==(const NewtonSlope&) const = default;
};

struct NewtonPolygon {
    std::vector<std::pair<long, Rational>> vertices;  // (degree, valuation)
    std::vector<NewtonSlope> slopes;
};

// Lower convex hull of (degree, valuation) points; collinear segments merged.
inline NewtonPolygon newton_polygon(std::vector<std::pair<long, Rational>> pts) {
    if (pts.empty()) throw contract_error("newton_polygon: no points");
    std::sort(pts.begin(), pts.end());
    // keep the lowest valuation at each degree
    std::vector<std::pair<long, Rational>> uniq;
    for (auto& pt : pts) {
        if (!uniq.empty() && uniq.back().first == pt.first) continue;
        uniq.push_back(pt);
    }
    std::vector<std::pair<long, Rational>> hull;
    for (auto& pt : uniq) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // drop b unless it turns strictly left of the chord a->pt
            Rational cross = (b.second - a.second) * (pt.first - a.first) -
                             (pt.second - a.second) * (b.first - a.first);
            if (cross < 0) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    NewtonPolygon np;
    np.vertices = hull;
    for (size_t i = 1; i < hull.size(); ++i) {
        Rational s = (hull[i].second - hull[i - 1].second) / (hull[i].first - hull[i - 1].first);
        np.slopes.push_back({s, hull[i].first - hull[i - 1].first});
    }
    return np;
}

// Number of roots of p-adic order >= -lambda: horizontal length of slopes <= lambda.
inline long slope_root_count(const NewtonPolygon& np, const Rational& lambda) {
    long total = 0;
    for (auto& s : np.slopes)
        if (s.slope <= lambda) total += s.length;
    return total;
}

// det(1 - AT) through degree M from exact power sums t_s = tr(A^s), s = 1..S.
inline TruncSeries<Rational> traces_to_charpoly(const std::vector<Rational>& powersums, int M) {
    if (M > static_cast<int>(powersums.size()))
        throw contract_error("traces_to_charpoly: M exceeds available power sums");
    std::vector<Rational> e(M + 1, Rational(0));
    e[0] = 1;
    for (int k = 1; k <= M; ++k) {
        Rational acc(0);
        for (int i = 1; i <= k; ++i) {
            Rational term = e[k - i] * powersums[i - 1];
            if (i % 2 == 0) acc -= term; else acc += term;
        }
        e[k] = acc / k;
    }
    std::vector<Rational> out(M + 1);
    for (int k = 0; k <= M; ++k) out[k] = (k % 2 == 0) ? e[k] : -e[k];
    return TruncSeries<Rational>(std::move(out));
}

}  // namespace dwork

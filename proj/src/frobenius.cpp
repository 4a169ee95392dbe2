#include "ltlab/frobenius.hpp"

#include "ltlab/zmod.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ltlab {

GaussSum gauss_sum(int64_t p, int64_t i, int64_t j, int prec) {
    if (i < 1 || i > p - 1 || j < 1 || j > p - 2)
        throw usage_error("gauss_sum: need 1 <= i <= p-1 and 1 <= j <= p-2");
    if (prec < 2) throw usage_error("gauss_sum: prec must be at least 2");
    CyclotomicP acc(p, prec);
    for (int64_t t = 1; t < p; ++t) {
        Zmod chi = -(teichmuller(p, t, prec).inv().pow(uint64_t(j)));
        CyclotomicP zp = CyclotomicP::zeta_pow(p, prec, (i * t) % p);
        for (size_t k = 0; k < acc.c.size(); ++k)
            acc.c[k] = (acc.c[k] + mulmod_u64(chi.value, zp.c[k], acc.mod)) % acc.mod;
    }
    return GaussSum{p, i, j, acc};
}

std::vector<StickelbergerRow> stickelberger_check(int64_t p, int prec) {
    if (p >= 11 && prec < 3)
        throw usage_error("stickelberger_check: prec >= 3 required for p >= 11");
    std::vector<StickelbergerRow> table;
    for (int64_t j = 1; j <= p - 2; ++j) {
        uint64_t fact = 1;
        for (int64_t r = 2; r <= j; ++r) fact = (fact * uint64_t(r)) % uint64_t(p);
        int64_t base = int64_t(invmod_u64(fact, uint64_t(p)));
        if (j % 2 == 1) base = (p - base) % p;
        for (int64_t i = 1; i <= p - 1; ++i) {
            int64_t expect_unit =
                int64_t(mulmod_u64(uint64_t(base),
                                   powmod_u64(uint64_t(i), uint64_t(j), uint64_t(p)),
                                   uint64_t(p)));
            GaussSum g = gauss_sum(p, i, j, prec);
            auto [val, unit] = lambda_valuation(g.value);
            bool ok = (val == j) && (unit == expect_unit);
            if (!ok) {
                std::ostringstream os;
                os << "stickelberger_check: g(" << i << ", " << j << ") has valuation "
                   << val << " unit " << unit << ", expected " << j << " and "
                   << expect_unit;
                throw check_error(os.str());
            }
            table.push_back(StickelbergerRow{i, j, val, unit, ok});
        }
    }
    return table;
}

void gauss_conjugate_product_check(int64_t p, int prec) {
    for (int64_t i = 1; i <= p - 1; ++i) {
        for (int64_t j = 1; j <= p - 2; ++j) {
            CyclotomicP a = gauss_sum(p, i, j, prec).value;
            CyclotomicP b = gauss_sum(p, p - i, p - 1 - j, prec).value;
            if (!(a * b == CyclotomicP::scalar(p, prec, p))) {
                std::ostringstream os;
                os << "gauss_conjugate_product_check: g(" << i << ", " << j
                   << ") * g(" << p - i << ", " << p - 1 - j << ") != p";
                throw check_error(os.str());
            }
        }
    }
}

int64_t point_count(int64_t p, int64_t k) {
    if (k < 1) throw usage_error("point_count: k must be positive");
    uint64_t q = pow_u64_checked(uint64_t(p), uint64_t(k), "point_count field size");
    if (q > 1000000000ull)
        throw guard_error("point_count: p^k exceeds 1e9");
    auto F = FqField::make(p, int(k), false);
    int64_t cnt = 0;
    for (uint64_t n = 0; n < q; ++n) {
        FqElement x = F->from_digits(n);
        if (F->trace_to_prime_field(x.pow(uint64_t(p - 1))) == 0) ++cnt;
    }
    return p * cnt + 1;
}

Fraction Fraction::make(int64_t n, int64_t d) {
    if (d == 0) throw usage_error("Fraction: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return Fraction{n / g, d / g};
}

std::string Fraction::to_string() const {
    std::ostringstream os;
    os << num << "/" << den;
    return os.str();
}

LPolynomial l_polynomial(int64_t p) {
    int64_t g = (p - 1) * (p - 2) / 2;
    std::vector<int64_t> s(size_t(g) + 1, 0);  // power sums of Frobenius eigenvalues
    for (int64_t k = 1; k <= g; ++k) {
        int64_t pk = 1;
        for (int64_t r = 0; r < k; ++r) pk *= p;
        s[size_t(k)] = pk + 1 - point_count(p, k);
    }
    std::vector<int64_t> c(size_t(2 * g) + 1, 0);
    c[0] = 1;
    for (int64_t k = 1; k <= g; ++k) {
        __int128 acc = 0;
        for (int64_t i = 1; i <= k; ++i)
            acc += __int128(s[size_t(i)]) * c[size_t(k - i)];
        if (acc % k != 0)
            throw check_error("l_polynomial: Newton identity yields a non-integral coefficient");
        __int128 v = -(acc / k);
        c[size_t(k)] = int64_t(v);
    }
    for (int64_t i = g - 1; i >= 0; --i) {
        int64_t scale = 1;
        for (int64_t r = 0; r < g - i; ++r) scale *= p;
        c[size_t(2 * g - i)] = scale * c[size_t(i)];
    }
    return LPolynomial{p, g, c};
}

namespace {

int64_t valuation_p(int64_t p, int64_t v) {
    if (v < 0) v = -v;
    int64_t e = 0;
    while (v % p == 0) { v /= p; ++e; }
    return e;
}

}  // namespace

NewtonPolygon newton_polygon(const LPolynomial& L) {
    std::vector<std::pair<int64_t, int64_t>> pts;  // (index, p-adic valuation)
    for (size_t i = 0; i < L.c.size(); ++i)
        if (L.c[i] != 0) pts.emplace_back(int64_t(i), valuation_p(L.p, L.c[i]));
    NewtonPolygon poly;
    size_t cur = 0;
    while (pts[cur].first < 2 * L.g) {
        size_t best = cur + 1;
        for (size_t k = cur + 1; k < pts.size(); ++k) {
            // slope comparison by cross-multiplication; ties go to the
            // farther point so each hull segment is emitted once
            __int128 lhs = __int128(pts[k].second - pts[cur].second) *
                           (pts[best].first - pts[cur].first);
            __int128 rhs = __int128(pts[best].second - pts[cur].second) *
                           (pts[k].first - pts[cur].first);
            if (lhs < rhs || (lhs == rhs && pts[k].first > pts[best].first)) best = k;
        }
        Fraction sl = Fraction::make(pts[best].second - pts[cur].second,
                                     pts[best].first - pts[cur].first);
        poly.slopes.emplace_back(sl, pts[best].first - pts[cur].first);
        cur = best;
    }
    int64_t total = 0;
    for (auto& [sl, m] : poly.slopes) total += m;
    if (total != 2 * L.g)
        throw check_error("newton_polygon: horizontal length is not 2g");
    return poly;
}

std::string NewtonPolygon::to_string() const {
    std::ostringstream os;
    os << "{";
    for (size_t k = 0; k < slopes.size(); ++k) {
        if (k) os << ", ";
        os << slopes[k].first.to_string() << " x" << slopes[k].second;
    }
    os << "}";
    return os.str();
}

namespace {

// expand (slope, multiplicity) pairs into a flat sorted list for comparison
std::vector<Fraction> flatten(const NewtonPolygon& np) {
    std::vector<Fraction> out;
    for (auto& [sl, m] : np.slopes)
        for (int64_t r = 0; r < m; ++r) out.push_back(sl);
    std::sort(out.begin(), out.end());
    return out;
}

NewtonPolygon expected_slopes(int64_t p) {
    NewtonPolygon np;
    for (int64_t j = 1; j <= p - 2; ++j)
        np.slopes.emplace_back(Fraction::make(j, p - 1), p - 1);
    return np;
}

}  // namespace

NewtonPolygon zeta_slopes(int64_t p) {
    if (p != 3 && p != 5)
        throw guard_error("zeta_slopes: point counting is only feasible for p in {3, 5}");
    NewtonPolygon np = newton_polygon(l_polynomial(p));
    if (flatten(np) != flatten(expected_slopes(p)))
        throw check_error("zeta_slopes: slope multiset differs from {j/(p-1) x (p-1)}");
    return np;
}

NewtonPolygon gauss_slope_multiset(int64_t p, int prec) {
    auto table = stickelberger_check(p, prec);
    std::vector<Fraction> flat;
    for (auto& row : table) flat.push_back(Fraction::make(row.valuation, p - 1));
    std::sort(flat.begin(), flat.end());
    NewtonPolygon np;
    for (size_t k = 0; k < flat.size();) {
        size_t r = k;
        while (r < flat.size() && flat[r] == flat[k]) ++r;
        np.slopes.emplace_back(flat[k], int64_t(r - k));
        k = r;
    }
    return np;
}

}  // namespace ltlab

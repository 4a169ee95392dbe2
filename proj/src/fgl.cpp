#include "ltlab/fgl.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ltlab {

namespace {

std::vector<int> expvec(const SeriesRing& R, uint32_t idx) {
    const auto& e = R.exp_of[idx];
    return std::vector<int>(e.begin(), e.end());
}

Series series_pow(const Series& s, uint64_t e) {
    Series r = Series::constant(s.ring_ptr(), 1);
    Series b = s;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

// exact division by Y^k: remap exponents down, abort if any term has less
Series div_var_power(const Series& s, int var, int k) {
    const SeriesRing& R = s.ring();
    Series r(s.ring_ptr());
    for (uint32_t idx : R.by_degree) {
        std::vector<int> e = expvec(R, idx);
        uint64_t c = s.stored(e);
        if (c == 0) continue;
        if (e[size_t(var)] < k)
            throw check_error("division by " + R.vars[size_t(var)] + "^" +
                              std::to_string(k) + " leaves a negative power");
        e[size_t(var)] -= k;
        r.set_stored(e, c);
    }
    return r.shifted_div_p(s.shift());
}

uint64_t pow_p(int64_t p, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= uint64_t(p);
    return r;
}

struct PowCache {
    const Series* base;
    std::map<int, Series> memo;

    explicit PowCache(const Series& b) : base(&b) {}
    const Series& get(int e) {
        if (e == 1) return *base;
        auto it = memo.find(e);
        if (it != memo.end()) return it->second;
        Series v = get(e / 2) * get(e - e / 2);
        return memo.emplace(e, std::move(v)).first->second;
    }
};

// carry a shift-0 series into a ring at lower precision (same shape); the
// stored values reduce mod the smaller modulus
Series reduce_integral(const Series& s,
                       const std::shared_ptr<const SeriesRing>& out) {
    if (s.shift() != 0)
        throw usage_error("reduce_integral: series must have shift 0");
    Series r(out);
    for (uint32_t idx : out->by_degree) {
        std::vector<int> e = expvec(*out, idx);
        uint64_t c = s.stored(e) % out->mod;
        if (c != 0) r.set_stored(e, c);
    }
    return r;
}

}  // namespace

Series apply_univariate(const Series& poly1, const Series& z) {
    const SeriesRing& R1 = poly1.ring();
    if (R1.vars.size() != 1)
        throw usage_error("apply_univariate: polynomial must be univariate");
    if (z.shift() != 0)
        throw usage_error("apply_univariate: argument must have shift 0");
    std::vector<int> zero_e(z.ring().vars.size(), 0);
    if (z.stored(zero_e) != 0)
        throw usage_error("apply_univariate: argument must have zero constant term");
    std::vector<std::pair<int, uint64_t>> terms;  // (exponent, stored), ascending
    for (int k = 0; k <= R1.caps[0]; ++k) {
        uint64_t c = poly1.stored({k});
        if (c != 0) terms.emplace_back(k, c);
    }
    if (terms.empty()) return Series(z.ring_ptr());
    PowCache zp(z);
    Series r = Series::constant(z.ring_ptr(), terms.back().second);
    int cur = terms.back().first;
    for (size_t t = terms.size() - 1; t-- > 0;) {
        r = r * zp.get(cur - terms[t].first) +
            Series::constant(z.ring_ptr(), terms[t].second);
        cur = terms[t].first;
    }
    if (cur > 0) r = r * zp.get(cur);
    return r.shifted_div_p(poly1.shift());
}

Series solve_log_equation(const Series& log1, const Series& target, Series z,
                          int final_deg) {
    Series dlog = log1.derivative(0).integral_normalized();
    int d = 1;
    for (int round = 0; round < 64; ++round) {
        Series r = (apply_univariate(log1, z) - target).truncated_total(final_deg);
        if (r.is_zero()) return z.integral_normalized();
        if (d >= final_deg)
            throw check_error("solve_log_equation: residual survives full truncation");
        d = std::min(2 * d + 1, final_deg);
        Series corr = r * apply_univariate(dlog, z).inverse();
        z = (z - corr).truncated_total(d).integral_normalized();
    }
    throw check_error("solve_log_equation: Newton iteration did not converge");
}

LocalSolution solve_local_equation(int64_t p, int prec, int udeg, int ydeg) {
    if (p < 3) throw usage_error("solve_local_equation: p must be an odd prime");
    if (ydeg < int(p)) throw usage_error("solve_local_equation: ydeg must be at least p");
    if (udeg < 0) throw usage_error("solve_local_equation: negative udeg");
    std::vector<std::string> vars = {"Y"};
    std::vector<int> caps = {ydeg};
    int maxdeg = ydeg;
    if (udeg > 0) {
        for (int64_t i = 1; i <= p - 2; ++i) {
            vars.push_back("u" + std::to_string(i));
            caps.push_back(udeg);
        }
        maxdeg += int(p - 2) * udeg;
    }
    auto R = SeriesRing::make(p, prec, vars, caps, maxdeg);

    Series Y = Series::variable(R, 0);
    Series b = Series::constant(R, R->mod - 1);
    std::vector<Series> u((size_t(p - 1)), Series(R));  // u[i] = u_i, 1-based
    if (udeg > 0) {
        for (int64_t i = 1; i <= p - 2; ++i) {
            u[size_t(i)] = Series::variable(R, int(i));
            b = b - u[size_t(i)];
        }
    }
    Series Yp = series_pow(Y, uint64_t(p));

    Series W = Yp;
    int d = int(2 * p - 2);
    int rounds = 0;
    bool solved = false;
    for (int round = 0; round < 64; ++round) {
        std::vector<Series> Wpow((size_t(p)), Series(R));  // Wpow[i] = W^i
        Wpow[1] = W;
        for (int64_t i = 2; i <= p - 1; ++i) Wpow[size_t(i)] = Wpow[size_t(i - 1)] * W;
        Series f = W - Yp - b * Wpow[size_t(p - 1)] * Y;
        for (int64_t i = 1; udeg > 0 && i <= p - 2; ++i)
            f = f - u[size_t(i)] * Wpow[size_t(i)] * series_pow(Y, uint64_t(p - i));
        if (f.is_zero()) {
            rounds = round;
            solved = true;
            break;
        }
        d = std::min(2 * d + 1, maxdeg);
        Series fp = Series::constant(R, 1) -
                    b.scaled(uint64_t(p - 1)) * Wpow[size_t(p - 2)] * Y;
        for (int64_t i = 1; udeg > 0 && i <= p - 2; ++i)
            fp = fp - u[size_t(i)].scaled(uint64_t(i)) * Wpow[size_t(i - 1)] *
                          series_pow(Y, uint64_t(p - i));
        W = (W - f * fp.inverse()).truncated_total(d).integral_normalized();
    }
    if (!solved)
        throw check_error("solve_local_equation: iteration did not stabilize");

    Series unit = div_var_power(W, 0, int(p));
    std::vector<int> zero_e(vars.size(), 0);
    if (unit.coeff(zero_e) != 1)
        throw check_error("solve_local_equation: W/Y^p does not have constant term 1");
    return LocalSolution{p, udeg, ydeg, R, W, unit, rounds};
}

InvariantDifferential invariant_differential(int64_t p, int prec, int udeg, int ydeg) {
    // integrating the density divides by integers up to ydeg, so pad the
    // working precision by floor(log_p ydeg) + 1 to keep everything derived
    // from log exact mod p^prec
    int pad = 1;
    for (int64_t q = p; q <= ydeg; q *= p) ++pad;
    int prec_work = prec + pad;
    // the density coefficient at Y^k is determined by W through Y^{k+p}, so
    // solve W with that margin and restrict back afterwards
    LocalSolution loc = solve_local_equation(p, prec_work, udeg, ydeg + int(p));
    const auto& Rb = loc.ring;
    Series Y = Series::variable(Rb, 0);
    uint64_t one_minus_p = (Rb->mod + 1 - uint64_t(p)) % Rb->mod;
    Series raw = Series::constant(Rb, one_minus_p) -
                 Y * loc.u.derivative(0) * loc.u.inverse();
    std::vector<int> zero_e(Rb->vars.size(), 0);
    if (raw.coeff(zero_e) != one_minus_p)
        throw check_error("invariant_differential: density constant term is not 1-p");
    Series density_big = raw.div_unit(one_minus_p);

    std::vector<int> caps = Rb->caps;
    caps[0] = ydeg;
    auto R = SeriesRing::make(p, prec_work, Rb->vars, caps, Rb->maxdeg - int(p));
    Series density(R);
    for (uint32_t idx : R->by_degree) {
        std::vector<int> e = expvec(*R, idx);
        uint64_t c = density_big.stored(e);
        if (c != 0) density.set_stored(e, c);
    }
    if (density.coeff(zero_e) != 1)
        throw check_error("invariant_differential: normalized constant term is not 1");
    if (udeg >= 1) {
        // u_i-linear parts sit at Y^{i(p-1)} with coefficient exactly i
        for (int64_t i = 1; i <= p - 2; ++i) {
            std::vector<int> e(R->vars.size(), 0);
            e[0] = int(i * (p - 1));
            e[size_t(i)] = 1;
            if (int64_t(density.coeff(e)) != i)
                throw check_error(
                    "invariant_differential: u_" + std::to_string(i) +
                    "-linear coefficient at Y^" + std::to_string(i * (p - 1)) +
                    " is not " + std::to_string(i));
        }
    }
    Series log = density.truncated_total(ydeg - 1).integrated(0);
    return InvariantDifferential{prec, std::move(loc), R, std::move(density),
                                 std::move(log)};
}

void special_density_support_check(const InvariantDifferential& diff) {
    if (diff.local.udeg != 0)
        throw usage_error("special_density_support_check: requires the special fiber");
    const SeriesRing& R = diff.density.ring();
    int64_t p = R.p;
    int64_t step = (p - 1) * (p - 1);
    for (int k = 0; k <= R.caps[0]; ++k) {
        if (diff.density.coeff({k}) != 0 && k % step != 0)
            throw check_error("special fiber density has support at Y^" +
                              std::to_string(k) + ", not a multiple of (p-1)^2");
    }
}

PTypicalData hazewinkel_data(const InvariantDifferential& diff, int jmax) {
    const auto& R = diff.log.ring_ptr();
    int64_t p = R->p;
    if (pow_u64_checked(uint64_t(p), uint64_t(jmax), "hazewinkel degree") >
        uint64_t(R->caps[0]))
        throw usage_error("hazewinkel_data: ydeg too small for requested jmax");
    PTypicalData data;
    data.m.assign(size_t(jmax) + 1, Series(R));
    data.v.assign(size_t(jmax) + 1, Series(R));
    for (int j = 1; j <= jmax; ++j)
        data.m[size_t(j)] = diff.log.slice(0, int(pow_p(p, j)));
    for (int j = 1; j <= jmax; ++j) {
        Series acc = data.m[size_t(j)].scaled(uint64_t(p));
        for (int i = 1; i < j; ++i)
            acc = acc - data.m[size_t(i)] *
                            series_pow(data.v[size_t(j - i)], pow_p(p, i));
        data.v[size_t(j)] = acc.integral_normalized();
    }
    return data;
}

Series p_typicalize(const Series& log1) {
    const SeriesRing& R = log1.ring();
    if (R.vars.size() != 1) throw usage_error("p_typicalize: univariate input expected");
    Series r(log1.ring_ptr());
    for (int k = 1; k <= R.caps[0]; ++k) {
        uint64_t c = log1.stored({k});
        if (c == 0) continue;
        int64_t q = k;
        while (q % R.p == 0) q /= R.p;
        if (q == 1) r.set_stored({k}, c);
    }
    return r.shifted_div_p(log1.shift());
}

namespace {

// rank of a small integer matrix over F_p
int modp_rank(std::vector<std::vector<int64_t>> m, int64_t p) {
    size_t rows = m.size();
    if (rows == 0) return 0;
    size_t cols = m[0].size();
    int rank = 0;
    for (size_t c = 0; c < cols && size_t(rank) < rows; ++c) {
        size_t piv = size_t(rank);
        while (piv < rows && m[piv][c] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[size_t(rank)], m[piv]);
        uint64_t inv = invmod_u64(uint64_t(((m[size_t(rank)][c] % p) + p) % p), uint64_t(p));
        for (size_t r = size_t(rank) + 1; r < rows; ++r) {
            int64_t factor = int64_t(mulmod_u64(uint64_t(((m[r][c] % p) + p) % p), inv,
                                                uint64_t(p)));
            for (size_t cc = 0; cc < cols; ++cc)
                m[r][cc] = ((m[r][cc] - factor * m[size_t(rank)][cc]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

RecognitionResult recognition_check(int64_t p, int prec, int udeg, int ydeg) {
    if (p != 3 && p != 5)
        throw guard_error("recognition_check: sized for p in {3, 5}");
    if (prec == 0) prec = int(2 * p + 1);
    if (ydeg == 0) ydeg = int(pow_p(p, int(p - 2)) + uint64_t(p));
    if (udeg < 1) throw usage_error("recognition_check: udeg must be at least 1");

    InvariantDifferential diff = invariant_differential(p, prec, udeg, ydeg);
    const auto& R = diff.density.ring_ptr();
    size_t n = size_t(p - 2);

    // a_j := density coefficient at Y^{j(p-1)}; matrix of u-linear parts mod p
    std::vector<std::vector<int64_t>> a_linear(n, std::vector<int64_t>(n, 0));
    for (size_t j = 1; j <= n; ++j) {
        Series aj = diff.density.slice(0, int(int64_t(j) * (p - 1)));
        for (size_t i = 1; i <= n; ++i) {
            std::vector<int> e(R->vars.size(), 0);
            e[i] = 1;
            a_linear[j - 1][i - 1] = int64_t(aj.coeff(e) % uint64_t(p));
        }
    }
    int rank = modp_rank(a_linear, p);

    // the Hazewinkel data must see the same ideal: v_j's constant term
    // vanishes (its special fiber sits at the Y-exponent p^j - 1, not a
    // multiple of (p-1)^2), and its u-linear part mod p is a unit multiple
    // of u_j alone, so (p, v_1, ..., v_{p-2}) is the maximal ideal as well
    PTypicalData data = hazewinkel_data(diff, int(p - 2));
    bool ptypical_ok = true;
    std::vector<int> zero_e(R->vars.size(), 0);
    std::vector<std::vector<int64_t>> v_linear(n, std::vector<int64_t>(n, 0));
    for (size_t j = 1; j <= n; ++j) {
        if (data.v[j].coeff(zero_e) % uint64_t(p) != 0) ptypical_ok = false;
        for (size_t i = 1; i <= n; ++i) {
            std::vector<int> e(R->vars.size(), 0);
            e[i] = 1;
            int64_t c = int64_t(data.v[j].coeff(e) % uint64_t(p));
            v_linear[j - 1][i - 1] = c;
            if (i == j ? c == 0 : c != 0) ptypical_ok = false;
        }
    }

    bool pass = (rank == int(n)) && ptypical_ok;
    if (!pass) {
        std::ostringstream os;
        os << "recognition_check failed at p=" << p << ": rank " << rank
           << " of " << n << (ptypical_ok ? "" : ", p-typical congruence violated");
        throw check_error(os.str());
    }
    return RecognitionResult{p,    prec,        udeg, ydeg, a_linear, v_linear,
                             rank, ptypical_ok, pass};
}

HeightResult height_check(int64_t p, int prec, int ydeg, bool allow_large) {
    if (p == 7 && !allow_large)
        throw guard_error("height_check: p=7 runs at degree 7^6, pass allow_large to opt in");
    if (p != 3 && p != 5 && p != 7)
        throw guard_error("height_check: sized for p in {3, 5} (7 with allow_large)");
    if (prec == 0) prec = int(p + 3);
    uint64_t need = pow_u64_checked(uint64_t(p), uint64_t(p - 1), "height degree");
    if (ydeg == 0) ydeg = int(need);
    if (uint64_t(ydeg) < need)
        throw usage_error("height_check: ydeg must reach p^(p-1)");

    InvariantDifferential diff = invariant_differential(p, prec, 0, ydeg);
    special_density_support_check(diff);
    PTypicalData data = hazewinkel_data(diff, int(p - 1));

    std::vector<int> zero_e(diff.log.ring().vars.size(), 0);
    std::vector<int> val(size_t(p), 0);
    int height = 0;
    for (int j = 1; j <= int(p - 1); ++j) {
        uint64_t c = data.v[size_t(j)].coeff(zero_e);
        int v = 0;
        while (v < prec && c != 0 && c % uint64_t(p) == 0) { c /= uint64_t(p); ++v; }
        if (c == 0) v = prec;
        val[size_t(j)] = v;
        if (v == 0 && height == 0) height = j;
    }
    if (height == 0)
        throw check_error("height_check: every v_j vanishes mod p to this precision");
    for (int j = 1; j < height; ++j)
        if (val[size_t(j)] == 0)
            throw check_error("height_check: unexpected unit v below the height");

    bool direct = (p <= 5);
    int64_t lead = 0;
    if (direct) {
        Series Y = Series::variable(diff.log.ring_ptr(), 0);
        Series psw = solve_log_equation(diff.log, diff.log.scaled(uint64_t(p)),
                                        Y.scaled(uint64_t(p)), ydeg);
        // the solve is exact mod p^prec; read it off in a ring at that precision
        auto Rout = SeriesRing::make(p, prec, {"Y"}, {ydeg}, ydeg);
        Series ps = reduce_integral(psw, Rout);
        if (ps.coeff({1}) != uint64_t(p) % Rout->mod)
            throw check_error("height_check: [p](x) is not p*x + O(x^2)");
        int first = -1;
        for (int k = 1; k <= ydeg; ++k) {
            if (ps.coeff({k}) % uint64_t(p) != 0) { first = k; break; }
        }
        if (first < 0)
            throw check_error("height_check: [p](x) vanishes mod p to full truncation");
        if (uint64_t(first) != pow_p(p, height))
            throw check_error("height_check: first term of [p] mod p sits at x^" +
                              std::to_string(first) + ", expected x^p^" +
                              std::to_string(height));
        lead = int64_t(ps.coeff({first}) % uint64_t(p));
        int64_t vh = int64_t(data.v[size_t(height)].coeff(zero_e) % uint64_t(p));
        if (lead != vh)
            throw check_error("height_check: leading [p] coefficient differs from v_h mod p");
    }

    bool pass = (height == int(p - 1));
    if (!pass)
        throw check_error("height_check: height " + std::to_string(height) +
                          ", expected " + std::to_string(p - 1));
    return HeightResult{p, prec, ydeg, val, height, direct, lead, pass};
}

FormalGroupLaw fgl_from_log(const Series& log_in, int deg) {
    const SeriesRing& R0 = log_in.ring();
    int64_t p = R0.p;
    int prec_work = R0.prec;
    int prec = prec_work - log_in.shift();
    if (prec < 1)
        throw usage_error("fgl_from_log: log denominators exhaust the precision");
    if (deg < 2) throw usage_error("fgl_from_log: degree must be at least 2");

    auto ring1w = SeriesRing::make(p, prec_work, {"x"}, {deg}, deg);
    Series log1(ring1w);
    for (int k = 1; k <= std::min(deg, R0.caps[0]); ++k) {
        std::vector<int> e(R0.vars.size(), 0);
        e[0] = k;
        log1.set_stored({k}, log_in.stored(e));
    }
    // reject multivariate input (any coefficient involving another variable)
    for (uint32_t idx : R0.by_degree) {
        std::vector<int> e = expvec(R0, idx);
        bool pure = true;
        for (size_t i = 1; i < e.size(); ++i) pure = pure && e[i] == 0;
        if (!pure && log_in.stored(e) != 0)
            throw usage_error("fgl_from_log: log must be univariate");
    }
    log1 = log1.shifted_div_p(log_in.shift());
    Series x1 = Series::variable(ring1w, 0);
    if (!(log1 - x1).slice(0, 1).is_zero())
        throw check_error("fgl_from_log: log must start with x");

    auto ring2w = SeriesRing::make(p, prec_work, {"x", "y"}, {deg, deg}, deg);
    Series Xw = Series::variable(ring2w, 0);
    Series Yw = Series::variable(ring2w, 1);
    Series target = apply_univariate(log1, Xw) + apply_univariate(log1, Yw);
    Series Fw = solve_log_equation(log1, target, Xw + Yw, deg);

    if (!(Fw.substituted(1, Series(ring2w)) == Xw))
        throw check_error("fgl_from_log: F(x, 0) != x");
    for (int i = 0; i <= deg; ++i)
        for (int j = i + 1; i + j <= deg; ++j)
            if (Fw.coeff({i, j}) != Fw.coeff({j, i}))
                throw check_error("fgl_from_log: F is not symmetric");

    // F is exact mod p^prec; hand it out in clean rings at that precision
    auto ring1 = SeriesRing::make(p, prec, {"x"}, {deg}, deg);
    auto ring2 = SeriesRing::make(p, prec, {"x", "y"}, {deg, deg}, deg);
    Series F = reduce_integral(Fw, ring2);

    bool ptyp = true;
    for (int k = 2; k <= deg; ++k) {
        if (log1.stored({k}) == 0) continue;
        int64_t q = k;
        while (q % p == 0) q /= p;
        if (q != 1) ptyp = false;
    }
    return FormalGroupLaw{p, prec, deg, ring1, ring2, log1, F, ptyp};
}

Series compose2(const Series& F2, const Series& A, const Series& B) {
    if (F2.shift() != 0) throw usage_error("compose2: F must have shift 0");
    const SeriesRing& RF = F2.ring();
    if (RF.vars.size() != 2) throw usage_error("compose2: F must be bivariate");
    int dx = RF.caps[0], dy = RF.caps[1];
    int topx = -1;
    for (int i = 0; i <= dx; ++i)
        for (int j = 0; j <= dy; ++j)
            if (F2.stored({i, j}) != 0) topx = std::max(topx, i);
    Series r(A.ring_ptr());
    if (topx < 0) return r;
    for (int i = topx; i >= 0; --i) {
        Series inner(B.ring_ptr());
        for (int j = dy; j >= 0; --j) {
            uint64_t c = F2.stored({i, j});
            if (!inner.is_zero()) inner = inner * B;
            if (c != 0) inner = inner + Series::constant(B.ring_ptr(), c);
        }
        if (i == topx) r = inner;
        else r = r * A + inner;
    }
    return r;
}

void associativity_check(const FormalGroupLaw& fgl, int deg) {
    if (deg == 0) deg = std::min<int>(fgl.deg, int(2 * fgl.p + 8));
    auto ring3 = SeriesRing::make(fgl.p, fgl.prec, {"x", "y", "z"},
                                  {deg, deg, deg}, deg);
    Series X = Series::variable(ring3, 0);
    Series Yv = Series::variable(ring3, 1);
    Series Z = Series::variable(ring3, 2);
    Series left = compose2(fgl.F, compose2(fgl.F, X, Yv), Z);
    Series right = compose2(fgl.F, X, compose2(fgl.F, Yv, Z));
    if (!(left == right))
        throw check_error("associativity_check: F(F(x,y),z) != F(x,F(y,z)) at degree " +
                          std::to_string(deg));
}

void p_fold_sum_check(const FormalGroupLaw& fgl) {
    Series x1 = Series::variable(fgl.ring1, 0);
    Series G = x1;
    for (int64_t k = 2; k <= fgl.p; ++k) G = compose2(fgl.F, G, x1);
    Series xw = Series::variable(fgl.log1.ring_ptr(), 0);
    Series ps = solve_log_equation(fgl.log1, fgl.log1.scaled(uint64_t(fgl.p)),
                                   xw.scaled(uint64_t(fgl.p)), fgl.deg);
    if (!(G == reduce_integral(ps, fgl.ring1)))
        throw check_error("p_fold_sum_check: p-fold formal sum differs from exp(p log)");
}

void p_typical_strict_iso_check(const FormalGroupLaw& fgl, int deg) {
    if (deg == 0) deg = fgl.deg;
    Series logp = p_typicalize(fgl.log1);
    FormalGroupLaw Fp = fgl_from_log(logp, deg);
    // phi solves log_ptypical(phi) = log, so phi = exp_ptypical(log(x))
    Series xw = Series::variable(fgl.log1.ring_ptr(), 0);
    Series phiw = solve_log_equation(logp, fgl.log1, xw, deg);
    Series phi = reduce_integral(phiw, fgl.ring1);
    Series x1 = Series::variable(fgl.ring1, 0);
    if (!(phi - x1).slice(0, 1).is_zero())
        throw check_error("p_typical_strict_iso_check: phi is not strict");
    Series X = Series::variable(fgl.ring, 0);
    Series Yv = Series::variable(fgl.ring, 1);
    Series lhs = apply_univariate(phi, fgl.F).truncated_total(deg);
    Series rhs = compose2(Fp.F, apply_univariate(phi, X), apply_univariate(phi, Yv))
                     .truncated_total(deg);
    if (!(lhs == rhs))
        throw check_error("p_typical_strict_iso_check: phi does not intertwine F and F'");
}

}  // namespace ltlab

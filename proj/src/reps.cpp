#include "ltlab/reps.hpp"

#include "ltlab/padic_linalg.hpp"

#include <algorithm>
#include <sstream>

namespace ltlab {

GroupRingElement GroupRingElement::zero(int64_t n, int64_t p, int prec) {
    GroupRingElement g;
    g.n = n;
    g.p = p;
    g.prec = prec;
    g.mod = pow_u64_checked(uint64_t(p), unsigned(prec), "group ring modulus");
    g.c.assign(size_t(n), 0);
    return g;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
    GroupRingElement r = *this;
    for (int64_t i = 0; i < n; ++i) r.c[size_t(i)] = (r.c[size_t(i)] + o.c[size_t(i)]) % mod;
    return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
    GroupRingElement r = *this;
    for (int64_t i = 0; i < n; ++i)
        r.c[size_t(i)] = (r.c[size_t(i)] + mod - o.c[size_t(i)]) % mod;
    return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
    GroupRingElement r = zero(n, p, prec);
    for (int64_t i = 0; i < n; ++i) {
        if (c[size_t(i)] == 0) continue;
        for (int64_t j = 0; j < n; ++j) {
            size_t k = size_t((i + j) % n);
            r.c[k] = (r.c[k] + mulmod_u64(c[size_t(i)], o.c[size_t(j)], mod)) % mod;
        }
    }
    return r;
}

uint64_t GroupRingElement::augmentation() const {
    uint64_t s = 0;
    for (uint64_t v : c) s = (s + v) % mod;
    return s;
}

std::string GroupRingElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int64_t i = 0; i < n; ++i) {
        if (c[size_t(i)] == 0) continue;
        if (!first) os << " + ";
        os << c[size_t(i)];
        if (i == 1) os << "g";
        if (i > 1) os << "g^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::vector<Idempotent> central_idempotents(int64_t p, int64_t n, int prec) {
    if (n <= 0 || (p - 1) % n != 0)
        throw usage_error("idempotents require n dividing p-1");
    int64_t g0 = 2;
    while (!is_primitive_root(g0, p)) ++g0;
    Zmod xi = teichmuller(p, g0, prec).pow(uint64_t((p - 1) / n));
    Zmod inv_n = Zmod(p, prec, uint64_t(n)).inv();

    std::vector<Idempotent> out;
    for (int64_t i = 0; i < n; ++i) {
        GroupRingElement e = GroupRingElement::zero(n, p, prec);
        for (int64_t r = 0; r < n; ++r) {
            Zmod coeff = inv_n * xi.pow(uint64_t((i * r) % n));
            size_t idx = size_t((n - r) % n);
            e.c[idx] = (e.c[idx] + coeff.value) % e.mod;
        }
        out.push_back(Idempotent{i, e});
    }

    GroupRingElement one = GroupRingElement::zero(n, p, prec);
    one.c[0] = 1;
    GroupRingElement sum = GroupRingElement::zero(n, p, prec);
    for (const auto& ei : out) {
        sum = sum + ei.e;
        for (const auto& ej : out) {
            GroupRingElement prod = ei.e * ej.e;
            if (ei.chi == ej.chi && !(prod == ei.e))
                throw check_error("idempotent e_" + std::to_string(ei.chi) + " is not idempotent");
            if (ei.chi != ej.chi && !(prod == GroupRingElement::zero(n, p, prec)))
                throw check_error("idempotents " + std::to_string(ei.chi) + "," +
                                  std::to_string(ej.chi) + " are not orthogonal");
        }
    }
    if (!(sum == one)) throw check_error("idempotents do not sum to 1");
    return out;
}

IntMatrix standard_rep_matrix(int64_t n, const std::vector<int64_t>& perm) {
    if (int64_t(perm.size()) != n) throw usage_error("permutation size mismatch");
    IntMatrix M(n - 1, n - 1);
    for (int64_t j = 0; j < n - 1; ++j) {
        int64_t img = perm[size_t(j)];
        if (img < n - 1) {
            M.at(img, j) = 1;
        } else {
            for (int64_t r = 0; r < n - 1; ++r) M.at(r, j) = -1;
        }
    }
    return M;
}

StandardRep standard_rep(int64_t n) {
    if (n < 2) throw usage_error("standard representation needs n >= 2");
    std::vector<int64_t> tr(size_t(n), 0), cyc(size_t(n), 0);
    for (int64_t i = 0; i < n; ++i) {
        tr[size_t(i)] = i;
        cyc[size_t(i)] = (i + 1) % n;
    }
    std::swap(tr[0], tr[1]);
    return StandardRep{n, standard_rep_matrix(n, tr), standard_rep_matrix(n, cyc)};
}

namespace {

// determinant mod p^prec by unit-pivot elimination; 0 means det is not a unit
uint64_t det_mod(std::vector<std::vector<uint64_t>> m, int64_t p, uint64_t mod) {
    size_t n = m.size();
    uint64_t det = 1;
    bool neg = false;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = n;
        for (size_t r = c; r < n; ++r)
            if (m[r][c] % uint64_t(p) != 0) {
                piv = r;
                break;
            }
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            neg = !neg;
        }
        det = mulmod_u64(det, m[c][c], mod);
        uint64_t inv = invmod_u64(m[c][c], mod);
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            uint64_t f = mulmod_u64(m[r][c], inv, mod);
            for (size_t k = c; k < n; ++k)
                m[r][k] = (m[r][k] + mod - mulmod_u64(f, m[c][k], mod)) % mod;
        }
    }
    if (neg) det = (mod - det) % mod;
    return det;
}

}  // namespace

GeneratorCheck group_ring_generator_check(const PrimeContext& ctx) {
    int64_t p = ctx.p;
    uint64_t mod = pow_u64_checked(uint64_t(p), unsigned(ctx.prec), "group ring modulus");
    Zmod zeta = ctx.teich(ctx.a);  // (p-1)-root of unity lifting the primitive root

    // y = sum_{k=1}^{p-1} zeta^k t^{a^k}
    std::vector<uint64_t> y(size_t(p), 0);
    int64_t ak = 1;
    for (int64_t k = 1; k <= p - 1; ++k) {
        ak = (ak * ctx.a) % p;
        size_t idx = size_t(ak);
        y[idx] = (y[idx] + zeta.pow(uint64_t(k)).value) % mod;
    }
    uint64_t aug = 0;
    for (uint64_t v : y) aug = (aug + v) % mod;

    GeneratorCheck out;
    out.augmentation_zero = (aug == 0);
    if (!out.augmentation_zero) throw check_error("generator y has nonzero augmentation");

    // columns t^j y in the basis {t^i - 1 : i = 1..p-1}; since eps(t^j y) = 0
    // the coordinates are just the coefficients of t^1..t^{p-1}
    out.matrix.assign(size_t(p - 1), std::vector<uint64_t>(size_t(p - 1), 0));
    for (int64_t j = 0; j <= p - 2; ++j)
        for (int64_t i = 1; i <= p - 1; ++i)
            out.matrix[size_t(i - 1)][size_t(j)] = y[size_t(((i - j) % p + p) % p)];

    out.det = det_mod(out.matrix, p, mod);
    out.det_unit = (out.det != 0);
    if (!out.det_unit) throw check_error("generator matrix determinant is not a unit mod p");

    // intertwining with the standard representation: M C = T M, where C is
    // the p-cycle on the standard basis and T is multiplication by t
    std::vector<int64_t> cyc(size_t(p), 0);
    for (int64_t i = 0; i < p; ++i) cyc[size_t(i)] = (i + 1) % p;
    IntMatrix C = standard_rep_matrix(p, cyc);
    auto at_mod = [&](const IntMatrix& M, int64_t r, int64_t c) {
        BigInt v = M.at(r, c) % BigInt(mod);
        if (v < 0) v += BigInt(mod);
        return uint64_t(v);
    };
    std::vector<std::vector<uint64_t>> T(size_t(p - 1), std::vector<uint64_t>(size_t(p - 1), 0));
    for (int64_t i = 1; i <= p - 1; ++i) {
        if (i < p - 1) T[size_t(i)][size_t(i - 1)] = 1;  // t^{i+1} - 1
        T[0][size_t(i - 1)] = (T[0][size_t(i - 1)] + mod - 1) % mod;
    }
    out.intertwines = true;
    for (int64_t r = 0; r < p - 1 && out.intertwines; ++r)
        for (int64_t c = 0; c < p - 1; ++c) {
            uint64_t lhs = 0, rhs = 0;
            for (int64_t k = 0; k < p - 1; ++k) {
                lhs = (lhs + mulmod_u64(out.matrix[size_t(r)][size_t(k)], at_mod(C, k, c), mod)) %
                      mod;
                rhs = (rhs + mulmod_u64(T[size_t(r)][size_t(k)],
                                        out.matrix[size_t(k)][size_t(c)], mod)) %
                      mod;
            }
            if (lhs != rhs) {
                out.intertwines = false;
                break;
            }
        }
    if (!out.intertwines)
        throw check_error("generator matrix does not intertwine the standard representation");
    return out;
}

ModpGeneratorCheck group_ring_generator_modp_check(int64_t p) {
    if (p < 3 || p % 2 == 0) throw usage_error("p must be an odd prime");
    ModpGeneratorCheck out;
    out.ybar.assign(size_t(p), 0);
    for (int64_t i = 1; i < p; ++i)
        out.ybar[size_t(i)] = int64_t(invmod_u64(uint64_t(i), uint64_t(p)));

    int64_t aug = 0;
    for (int64_t v : out.ybar) aug = (aug + v) % p;
    out.augmentation_zero = (aug == 0);

    // coefficients in u = t-1 coordinates: [u^s] = sum_i ybar_i C(i, s)
    std::vector<std::vector<int64_t>> pasc(size_t(p), std::vector<int64_t>(size_t(p), 0));
    for (int64_t n = 0; n < p; ++n) {
        pasc[size_t(n)][0] = 1;
        for (int64_t k = 1; k <= n; ++k)
            pasc[size_t(n)][size_t(k)] =
                (pasc[size_t(n - 1)][size_t(k - 1)] + pasc[size_t(n - 1)][size_t(k)]) % p;
    }
    auto ucoeff = [&](int64_t s) {
        int64_t acc = 0;
        for (int64_t i = 0; i < p; ++i)
            acc = (acc + out.ybar[size_t(i)] * pasc[size_t(i)][size_t(s)]) % p;
        return acc;
    };
    out.leading_congruence = (ucoeff(0) == 0) && (ucoeff(1) == p - 1);

    RowEchelonP span(p, p);
    for (int64_t k = 0; k < p; ++k) {
        std::vector<uint8_t> rot(size_t(p), 0);
        int64_t rot_aug = 0;
        for (int64_t i = 0; i < p; ++i) {
            rot[size_t((i + k) % p)] = uint8_t(out.ybar[size_t(i)]);
            rot_aug = (rot_aug + out.ybar[size_t(i)]) % p;
        }
        if (rot_aug != 0) throw check_error("rotation left the augmentation ideal");
        span.insert(rot);
    }
    out.span_dimension = span.rank();
    out.generates_augmentation_ideal = (out.span_dimension == p - 1);
    return out;
}

int64_t Monomials::index(const std::vector<int32_t>& e) const {
    auto it = std::lower_bound(exps.begin(), exps.end(), e);
    if (it == exps.end() || *it != e) throw check_error("monomial not in basis");
    return int64_t(it - exps.begin());
}

Monomials enumerate_monomials(int64_t nvars, int64_t w, int64_t dim_guard) {
    if (nvars < 1 || w < 0) throw usage_error("bad monomial parameters");
    // dimension C(w + nvars - 1, nvars - 1), checked against the guard first
    uint64_t dim = 1;
    for (int64_t i = 1; i < nvars; ++i) {
        dim = dim * uint64_t(w + i);
        dim /= uint64_t(i);
        if (dim > uint64_t(dim_guard) * 4) break;  // avoid overflow on absurd inputs
    }
    if (dim > uint64_t(dim_guard))
        throw guard_error("graded piece dimension " + std::to_string(dim) +
                          " exceeds the size guard " + std::to_string(dim_guard));

    Monomials m;
    m.nvars = nvars;
    m.w = w;
    std::vector<int32_t> cur(size_t(nvars), 0);
    // lexicographic enumeration: leading variable ascends, remainder recurses
    auto rec = [&](auto&& self, int64_t v, int64_t rem) -> void {
        if (v == nvars - 1) {
            cur[size_t(v)] = int32_t(rem);
            m.exps.push_back(cur);
            return;
        }
        for (int64_t t = 0; t <= rem; ++t) {
            cur[size_t(v)] = int32_t(t);
            self(self, v + 1, rem - t);
        }
    };
    rec(rec, 0, w);
    if (m.dim() != int64_t(dim) && dim <= uint64_t(dim_guard))
        throw check_error("monomial count disagrees with the binomial formula");
    return m;
}

SparseMat SparseMat::zero(int64_t rows, int64_t cols, uint64_t mod) {
    SparseMat s;
    s.rows = rows;
    s.cols = cols;
    s.mod = mod;
    s.col.resize(size_t(cols));
    return s;
}

void SparseMat::add_entry(int64_t r, int64_t c, uint64_t v) {
    v %= mod;
    if (v == 0) return;
    col[size_t(c)].emplace_back(int32_t(r), uint32_t(v));
}

std::vector<uint32_t> SparseMat::apply(const std::vector<uint32_t>& v) const {
    if (int64_t(v.size()) != cols) throw usage_error("sparse apply: size mismatch");
    std::vector<uint32_t> out(size_t(rows), 0);
    for (int64_t c = 0; c < cols; ++c) {
        uint64_t x = v[size_t(c)];
        if (x == 0) continue;
        for (const auto& [r, val] : col[size_t(c)])
            out[size_t(r)] = uint32_t((out[size_t(r)] + uint64_t(val) * x) % mod);
    }
    return out;
}

namespace {

std::vector<std::vector<uint64_t>> pascal_mod(int64_t n, uint64_t mod) {
    std::vector<std::vector<uint64_t>> P(size_t(n + 1), std::vector<uint64_t>(size_t(n + 1), 0));
    for (int64_t i = 0; i <= n; ++i) {
        P[size_t(i)][0] = 1 % mod;
        for (int64_t k = 1; k <= i; ++k)
            P[size_t(i)][size_t(k)] =
                (P[size_t(i - 1)][size_t(k - 1)] + P[size_t(i - 1)][size_t(k)]) % mod;
    }
    return P;
}

// Distribute `count` among all nvars variables on top of `base`, weighting by
// multinomial coefficients and sign; emit into the sparse column.
void expand_power_of_minus_sum(SparseMat& M, const Monomials& basis, int64_t colidx,
                               const std::vector<int32_t>& base, int64_t count,
                               const std::vector<std::vector<uint64_t>>& pasc) {
    uint64_t mod = M.mod;
    uint64_t sign = (count % 2 == 0) ? 1 % mod : mod - 1;
    std::vector<int32_t> cur = base;
    int64_t nv = basis.nvars;
    auto rec = [&](auto&& self, int64_t v, int64_t rem, uint64_t coeff) -> void {
        if (v == nv - 1) {
            cur[size_t(v)] = base[size_t(v)] + int32_t(rem);
            M.add_entry(basis.index(cur), colidx, mulmod_u64(coeff, sign, mod));
            cur[size_t(v)] = base[size_t(v)];
            return;
        }
        for (int64_t t = 0; t <= rem; ++t) {
            cur[size_t(v)] = base[size_t(v)] + int32_t(t);
            self(self, v + 1, rem - t, mulmod_u64(coeff, pasc[size_t(rem)][size_t(t)], mod));
        }
        cur[size_t(v)] = base[size_t(v)];
    };
    rec(rec, 0, count, 1 % mod);
}

uint64_t splitmix64(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

GradedPiece lambda_piece(const PrimeContext& ctx, int prec, int64_t w, int64_t dim_guard) {
    int64_t p = ctx.p;
    GradedPiece g;
    g.p = p;
    g.prec = prec;
    g.mod = pow_u64_checked(uint64_t(p), unsigned(prec), "graded piece modulus");
    if (g.mod > (uint64_t(1) << 31)) throw guard_error("graded piece modulus exceeds 2^31");
    g.w = w;
    g.reduced = true;
    g.basis = enumerate_monomials(p - 1, w, dim_guard);
    int64_t D = g.basis.dim();
    g.sigma = SparseMat::zero(D, D, g.mod);
    g.tau_int = SparseMat::zero(D, D, g.mod);
    auto pasc = pascal_mod(w, g.mod);

    // sigma: y_i -> y_{i+1}, with y_{p-2} landing on -(y_0+...+y_{p-2})
    for (int64_t cidx = 0; cidx < D; ++cidx) {
        const auto& k = g.basis.exps[size_t(cidx)];
        std::vector<int32_t> base(size_t(p - 1), 0);
        for (int64_t i = 0; i + 1 <= p - 2; ++i) base[size_t(i + 1)] = k[size_t(i)];
        expand_power_of_minus_sum(g.sigma, g.basis, cidx, base, k[size_t(p - 2)], pasc);
    }

    // tau: y_i -> y_{ia mod p}; exactly one variable index hits p-1
    int64_t istar = ((p - 1) * int64_t(invmod_u64(uint64_t(ctx.a), uint64_t(p)))) % p;
    for (int64_t cidx = 0; cidx < D; ++cidx) {
        const auto& k = g.basis.exps[size_t(cidx)];
        std::vector<int32_t> base(size_t(p - 1), 0);
        for (int64_t i = 0; i <= p - 2; ++i) {
            if (i == istar) continue;
            base[size_t((i * ctx.a) % p)] += k[size_t(i)];
        }
        expand_power_of_minus_sum(g.tau_int, g.basis, cidx, base, k[size_t(istar)], pasc);
    }
    return g;
}

GradedPiece sym_piece(const PrimeContext& ctx, int prec, int64_t w, int64_t dim_guard) {
    int64_t p = ctx.p;
    GradedPiece g;
    g.p = p;
    g.prec = prec;
    g.mod = pow_u64_checked(uint64_t(p), unsigned(prec), "graded piece modulus");
    if (g.mod > (uint64_t(1) << 31)) throw guard_error("graded piece modulus exceeds 2^31");
    g.w = w;
    g.reduced = false;
    g.basis = enumerate_monomials(p, w, dim_guard);
    int64_t D = g.basis.dim();
    g.sigma = SparseMat::zero(D, D, g.mod);
    g.tau_int = SparseMat::zero(D, D, g.mod);
    std::vector<int32_t> img(size_t(p), 0);
    for (int64_t cidx = 0; cidx < D; ++cidx) {
        const auto& k = g.basis.exps[size_t(cidx)];
        for (int64_t i = 0; i < p; ++i) img[size_t((i + 1) % p)] = k[size_t(i)];
        g.sigma.add_entry(g.basis.index(img), cidx, 1);
        for (int64_t i = 0; i < p; ++i) img[size_t((i * ctx.a) % p)] = k[size_t(i)];
        g.tau_int.add_entry(g.basis.index(img), cidx, 1);
    }
    return g;
}

void verify_piece_relations(const GradedPiece& g, int64_t a, uint64_t seed) {
    int64_t D = g.basis.dim();
    int64_t p = g.p;
    std::vector<std::vector<uint32_t>> probes;
    if (D <= 600) {
        for (int64_t j = 0; j < D; ++j) {
            std::vector<uint32_t> e(size_t(D), 0);
            e[size_t(j)] = 1;
            probes.push_back(std::move(e));
        }
    } else {
        uint64_t s = seed;
        for (int t = 0; t < 20; ++t) {
            std::vector<uint32_t> v(size_t(D), 0);
            for (auto& x : v) x = uint32_t(splitmix64(s) % g.mod);
            probes.push_back(std::move(v));
        }
    }
    auto pow_apply = [&](const SparseMat& M, std::vector<uint32_t> v, int64_t e) {
        for (int64_t i = 0; i < e; ++i) v = M.apply(v);
        return v;
    };
    for (const auto& v : probes) {
        if (pow_apply(g.sigma, v, p) != v)
            throw check_error("sigma^p != 1 on degree " + std::to_string(g.w));
        auto lhs = g.tau_int.apply(g.sigma.apply(v));
        auto rhs = pow_apply(g.sigma, g.tau_int.apply(v), a);
        if (lhs != rhs)
            throw check_error("tau sigma != sigma^a tau on degree " + std::to_string(g.w));
        if (pow_apply(g.tau_int, v, (p - 1) * (p - 1)) != v)
            throw check_error("tau^{(p-1)^2} != 1 on degree " + std::to_string(g.w));
    }
}

std::vector<uint32_t> lambda_expand(const GradedPiece& g, const std::vector<int32_t>& full_exps) {
    if (!g.reduced) throw usage_error("lambda_expand needs a reduced piece");
    int64_t p = g.p;
    if (int64_t(full_exps.size()) != p) throw usage_error("lambda_expand: exponent count != p");
    int64_t total = 0;
    for (int32_t e : full_exps) total += e;
    if (total != g.w) throw usage_error("lambda_expand: degree mismatch");

    SparseMat tmp = SparseMat::zero(g.basis.dim(), 1, g.mod);
    std::vector<int32_t> base(full_exps.begin(), full_exps.end() - 1);
    auto pasc = pascal_mod(g.w, g.mod);
    expand_power_of_minus_sum(tmp, g.basis, 0, base, full_exps[size_t(p - 1)], pasc);
    std::vector<uint32_t> out(size_t(g.basis.dim()), 0);
    for (const auto& [r, val] : tmp.col[0])
        out[size_t(r)] = uint32_t((out[size_t(r)] + val) % g.mod);
    return out;
}

}  // namespace ltlab

#include "ltlab/curve.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ltlab {

namespace {

std::string fq_str(const FqElement& e) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < e.c.size(); ++i) {
        if (i) os << ",";
        os << e.c[i];
    }
    os << ")";
    return os.str();
}

// Sparse bivariate polynomial over F_q, just enough for substitution checks.
struct Poly2 {
    const FqField* F;
    std::map<std::pair<int64_t, int64_t>, FqElement> t;  // (i,j) -> coeff of x^i y^j

    explicit Poly2(const FqField* F) : F(F) {}

    void add(int64_t i, int64_t j, const FqElement& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(i, j);
        auto it = t.find(key);
        if (it == t.end()) {
            t.emplace(key, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    // Rewrite y^p as y + x^{p-1} until all y-degrees are < p. Any polynomial
    // that reduces to 0 here is a multiple of the curve relation.
    void reduce_mod_curve(int64_t p) {
        for (;;) {
            auto it = std::find_if(t.begin(), t.end(),
                                   [&](const auto& kv) { return kv.first.second >= p; });
            if (it == t.end()) return;
            auto [i, j] = it->first;
            FqElement c = it->second;
            t.erase(it);
            add(i, j - p + 1, c);
            add(i + p - 1, j - p, c);
        }
    }

    bool is_zero() const { return t.empty(); }
};

int64_t binomial_small(int64_t n, int64_t k) {
    // n <= 13 here, so plain integer Pascal recursion is exact
    if (k < 0 || k > n) return 0;
    int64_t r = 1;
    for (int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

ProjPoint ProjPoint::make(FqElement X, FqElement Y, FqElement Z) {
    const FqElement* last = nullptr;
    if (!X.is_zero()) last = &X;
    if (!Y.is_zero()) last = &Y;
    if (!Z.is_zero()) last = &Z;
    if (last == nullptr) throw check_error("projective point needs a nonzero coordinate");
    FqElement s = last->inv();
    return ProjPoint{X * s, Y * s, Z * s};
}

std::string ProjPoint::to_string() const {
    return "[" + fq_str(X) + ":" + fq_str(Y) + ":" + fq_str(Z) + "]";
}

std::string CurveModel::equation_string() const {
    std::ostringstream os;
    os << "y^" << p() << " - y = x^" << (p() - 1);
    return os.str();
}

bool CurveModel::contains(const ProjPoint& P) const {
    int64_t p = ctx->p;
    FqElement lhs = P.Y.pow(uint64_t(p)) - P.Y * P.Z.pow(uint64_t(p - 1));
    FqElement rhs = P.X.pow(uint64_t(p - 1)) * P.Z;
    return lhs == rhs;
}

CurveAutomorphism identity_automorphism(const PrimeContext& ctx) {
    return CurveAutomorphism{ctx.F->one(), ctx.F->one(), ctx.F->zero(), "id"};
}

CurveAutomorphism compose(const CurveAutomorphism& a, const CurveAutomorphism& b) {
    // a(b(x,y)): x -> a_x b_x x, y -> a_y(b_y y + b_c) + a_c
    return CurveAutomorphism{a.x_scale * b.x_scale, a.y_scale * b.y_scale,
                             a.y_scale * b.y_shift + a.y_shift, ""};
}

CurveAutomorphism inverse(const CurveAutomorphism& a) {
    FqElement yi = a.y_scale.inv();
    return CurveAutomorphism{a.x_scale.inv(), yi, -(yi * a.y_shift), ""};
}

CurveAutomorphism automorphism_power(const CurveAutomorphism& a, int64_t k) {
    const FqField* F = a.x_scale.F;
    CurveAutomorphism r{F->one(), F->one(), F->zero(), ""};
    CurveAutomorphism base = k >= 0 ? a : inverse(a);
    uint64_t e = uint64_t(k >= 0 ? k : -k);
    while (e) {
        if (e & 1) r = compose(r, base);
        base = compose(base, base);
        e >>= 1;
    }
    return r;
}

ProjPoint apply(const CurveAutomorphism& a, const ProjPoint& P) {
    // [X:Y:Z] with x = X/Z, y = Y/Z maps to [a_x X : a_y Y + a_c Z : Z]
    return ProjPoint::make(a.x_scale * P.X, a.y_scale * P.Y + a.y_shift * P.Z, P.Z);
}

bool preserves_curve(const PrimeContext& ctx, const CurveAutomorphism& a) {
    const FqField* F = ctx.F.get();
    int64_t p = ctx.p;
    Poly2 E(F);
    // (b y + c)^p - (b y + c) - (a x)^{p-1}, expanded without assuming char-p
    // shortcuts so the check stays honest
    for (int64_t k = 0; k <= p; ++k) {
        FqElement coeff = F->scalar(binomial_small(p, k) % p) * a.y_scale.pow(uint64_t(k)) *
                          a.y_shift.pow(uint64_t(p - k));
        E.add(0, k, coeff);
    }
    E.add(0, 1, -a.y_scale);
    E.add(0, 0, -a.y_shift);
    E.add(p - 1, 0, -a.x_scale.pow(uint64_t(p - 1)));
    E.reduce_mod_curve(p);
    return E.is_zero();
}

int64_t automorphism_order(const PrimeContext& ctx, const CurveAutomorphism& a) {
    CurveAutomorphism id = identity_automorphism(ctx);
    CurveAutomorphism cur = a;
    int64_t cap = ctx.p * (ctx.p - 1) * (ctx.p - 1);
    for (int64_t n = 1; n <= cap; ++n) {
        if (cur == id) return n;
        cur = compose(cur, a);
    }
    throw check_error("automorphism order exceeds p(p-1)^2");
}

AutomorphismGroup automorphism_group(const PrimeContext& ctx) {
    const FqField* F = ctx.F.get();
    int64_t p = ctx.p;
    AutomorphismGroup G;
    G.sigma = CurveAutomorphism{F->one(), F->one(), F->one(), "sigma"};
    G.tau = CurveAutomorphism{ctx.zeta.pow(uint64_t(p)), ctx.zeta.pow(uint64_t(p - 1)),
                              F->zero(), "tau"};

    if (!preserves_curve(ctx, G.sigma))
        throw check_error("sigma does not preserve y^p - y = x^{p-1}");
    if (!preserves_curve(ctx, G.tau))
        throw check_error("tau does not preserve y^p - y = x^{p-1}");

    G.order_sigma = automorphism_order(ctx, G.sigma);
    if (G.order_sigma != p) throw check_error("order(sigma) != p");
    G.order_tau = automorphism_order(ctx, G.tau);
    if (G.order_tau != (p - 1) * (p - 1)) throw check_error("order(tau) != (p-1)^2");

    // tau sigma tau^{-1} fixes x and shifts y by zeta^{p-1}, i.e. equals
    // sigma^a for a the residue of zeta^{p-1} in F_p
    CurveAutomorphism conj = compose(compose(G.tau, G.sigma), inverse(G.tau));
    FqElement eta = ctx.zeta.pow(uint64_t(p - 1));
    if (!eta.in_prime_field()) throw check_error("zeta^{p-1} is not in the prime field");
    int64_t a = eta.c[0];
    if (!(conj == automorphism_power(G.sigma, a)))
        throw check_error("tau sigma tau^{-1} != sigma^a");
    if (a != ctx.a) throw check_error("conjugation exponent disagrees with the context");
    if (!is_primitive_root(a, p)) throw check_error("conjugation exponent is not a primitive root");
    G.a = a;
    G.relations_verified = true;
    return G;
}

int64_t RamificationDivisor::degree() const {
    int64_t d = 0;
    for (const auto& [P, c] : points) d += c;
    return d;
}

RamificationDivisor ramification(const PrimeContext& ctx, Cover cover) {
    const FqField* F = ctx.F.get();
    int64_t p = ctx.p;
    int64_t g = ctx.genus();
    RamificationDivisor R;
    R.cover = cover;
    ProjPoint infinity = ProjPoint::make(F->one(), F->zero(), F->zero());
    CurveModel X(ctx);
    if (!X.contains(infinity)) throw check_error("[1:0:0] is not on the curve");

    if (cover == Cover::p_y) {
        // quotient by C_{p-1} = <tau^{p-1}>, acting as x -> eta x with y fixed
        AutomorphismGroup G = automorphism_group(ctx);
        CurveAutomorphism alpha = automorphism_power(G.tau, p - 1);
        if (!(alpha.y_scale == F->one()) || !alpha.y_shift.is_zero())
            throw check_error("tau^{p-1} does not fix y");
        if (int64_t(F->multiplicative_order(alpha.x_scale)) != p - 1)
            throw check_error("tau^{p-1} does not have order p-1 on x");
        R.cover_degree = p - 1;
        R.tame = true;
        // affine fixed points force x = 0, hence y^p = y, i.e. y in F_p
        for (int64_t i = 0; i < p; ++i) {
            ProjPoint P = ProjPoint::make(F->zero(), F->scalar(i), F->one());
            if (!X.contains(P)) throw check_error("fixed point off the curve");
            for (int64_t k = 1; k < p - 1; ++k)
                if (!(apply(automorphism_power(alpha, k), P) == P))
                    throw check_error("stabilizer of " + P.to_string() + " is not all of C_{p-1}");
            R.points.emplace_back(P, p - 2);
        }
        if (!(apply(alpha, infinity) == infinity))
            throw check_error("C_{p-1} does not fix the point at infinity");
        R.points.emplace_back(infinity, p - 2);
    } else {
        // quotient by C_p = <sigma>; no affine fixed points since y -> y+1
        CurveAutomorphism sigma{F->one(), F->one(), F->one(), "sigma"};
        if (sigma.y_shift.is_zero()) throw check_error("sigma degenerated");
        if (!(apply(sigma, infinity) == infinity))
            throw check_error("sigma does not fix the point at infinity");
        R.cover_degree = p;
        R.tame = false;
        // wild different (m+1)(p-1) with conductor m = p-1
        R.points.emplace_back(infinity, p * (p - 1));
    }

    int64_t expected = (2 * g - 2) - R.cover_degree * (-2);  // g_Y = 0 for both quotients
    if (R.degree() != expected)
        throw check_error("ramification degree fails Riemann-Hurwitz: got " +
                          std::to_string(R.degree()) + ", expected " + std::to_string(expected));
    return R;
}

BranchPermutations branch_permutations(const PrimeContext& ctx) {
    int64_t p = ctx.p;
    BranchPermutations B;
    B.a = ctx.a;
    B.perm_sigma.resize(size_t(p));
    B.perm_tau.resize(size_t(p));
    for (int64_t i = 0; i < p; ++i) {
        B.perm_sigma[size_t(i)] = (i + 1) % p;
        B.perm_tau[size_t(i)] = (B.a * i) % p;
    }

    auto mul = [p](const std::vector<int64_t>& f, const std::vector<int64_t>& g) {
        std::vector<int64_t> h(size_t(p), 0);
        for (int64_t i = 0; i < p; ++i) h[size_t(i)] = f[size_t(g[size_t(i)])];
        return h;
    };
    std::set<std::vector<int64_t>> closure;
    std::vector<std::vector<int64_t>> frontier{B.perm_sigma, B.perm_tau};
    closure.insert(B.perm_sigma);
    closure.insert(B.perm_tau);
    while (!frontier.empty()) {
        std::vector<std::vector<int64_t>> next;
        for (const auto& f : frontier)
            for (const auto* gptr : {&B.perm_sigma, &B.perm_tau}) {
                auto h = mul(f, *gptr);
                if (closure.insert(h).second) next.push_back(std::move(h));
            }
        frontier = std::move(next);
    }
    B.group_order = int64_t(closure.size());
    if (B.group_order != p * (p - 1))
        throw check_error("branch permutation group has order " + std::to_string(B.group_order) +
                          ", expected p(p-1)");

    std::vector<int64_t> id(size_t(p), 0);
    for (int64_t i = 0; i < p; ++i) id[size_t(i)] = i;
    auto pw = [&](const std::vector<int64_t>& f, int64_t k) {
        auto r = id;
        for (int64_t n = 0; n < k; ++n) r = mul(f, r);
        return r;
    };
    if (pw(B.perm_sigma, p) != id) throw check_error("branch sigma^p != id");
    if (pw(B.perm_tau, p - 1) != id) throw check_error("branch tau^{p-1} != id");
    // t s t^{-1} = s^a: composing t s with t^{p-2} on the right avoids inverses
    if (mul(mul(B.perm_tau, B.perm_sigma), pw(B.perm_tau, p - 2)) != pw(B.perm_sigma, B.a))
        throw check_error("branch conjugation relation fails");
    return B;
}

std::vector<std::vector<int64_t>> permutation_cycles(const std::vector<int64_t>& perm) {
    size_t n = perm.size();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<int64_t>> cycles;
    for (size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int64_t> cyc;
        size_t i = s;
        while (!seen[i]) {
            seen[i] = true;
            cyc.push_back(int64_t(i));
            i = size_t(perm[i]);
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

std::vector<int64_t> cycle_type(const std::vector<int64_t>& perm) {
    std::vector<int64_t> type;
    for (const auto& c : permutation_cycles(perm)) type.push_back(int64_t(c.size()));
    std::sort(type.rbegin(), type.rend());
    return type;
}

std::string cycle_notation(const std::vector<int64_t>& perm) {
    std::ostringstream os;
    bool any = false;
    for (const auto& c : permutation_cycles(perm)) {
        if (c.size() == 1) continue;
        any = true;
        os << "(";
        for (size_t i = 0; i < c.size(); ++i) {
            if (i) os << " ";
            os << c[i];
        }
        os << ")";
    }
    if (!any) return "()";
    return os.str();
}

std::vector<DifferentialBasisElement> differential_basis(const PrimeContext& ctx) {
    int64_t p = ctx.p;
    FqElement eta = ctx.zeta.pow(uint64_t(p - 1));
    FqElement eta_inv = eta.inv();
    FqElement zx = ctx.zeta.pow(uint64_t(p));      // tau on x
    FqElement zy = ctx.zeta.pow(uint64_t(p - 1));  // tau on y (and on dy)

    auto dlog = [](const FqElement& base, const FqElement& v, int64_t order) {
        FqElement cur = v.F->one();
        for (int64_t k = 0; k < order; ++k) {
            if (cur == v) return k;
            cur = cur * base;
        }
        throw check_error("eigenvalue is not a power of the expected root of unity");
    };

    std::vector<DifferentialBasisElement> basis;
    for (int64_t i = 0; i <= p - 3; ++i)
        for (int64_t j = 0; i + j <= p - 3; ++j) {
            // alpha^* (x^i y^j dy / x^{p-2}) = eta^{i-(p-2)} x^i y^j dy / x^{p-2}
            FqElement s_alpha = eta.pow(uint64_t(i)) * eta.pow(uint64_t(p - 2)).inv();
            int64_t k = dlog(eta_inv, s_alpha, p - 1);
            FqElement s_tau = zx.pow(uint64_t(i)) * zy.pow(uint64_t(j + 1)) *
                              zx.pow(uint64_t(p - 2)).inv();
            int64_t e = dlog(ctx.zeta, s_tau, (p - 1) * (p - 1));
            basis.push_back(DifferentialBasisElement{i, j, k, e});
        }

    if (int64_t(basis.size()) != ctx.genus())
        throw check_error("differential basis size != genus");
    std::vector<int64_t> count(size_t(p - 1), 0);
    for (const auto& b : basis) count[size_t(b.char_exponent)]++;
    if (count[0] != 0) throw check_error("trivial character admits a differential");
    for (int64_t k = 1; k <= p - 2; ++k)
        if (count[size_t(k)] != k)
            throw check_error("character group " + std::to_string(k) + " has size " +
                              std::to_string(count[size_t(k)]) + ", expected " + std::to_string(k));
    for (const auto& b : basis)
        if (b.char_exponent == 1 && !(b.i == p - 3 && b.j == 0))
            throw check_error("unexpected differential with character exponent 1");
    return basis;
}

int64_t deformation_dimension(const PrimeContext& ctx, const std::string& subgroup) {
    if (subgroup != "C_{p-1}")
        throw usage_error("deformation dimension is only computed for the C_{p-1} quotient");
    int64_t gY = 0;
    int64_t branch_points = ctx.p + 1;
    return 3 * gY - 3 + branch_points;
}

}  // namespace ltlab
